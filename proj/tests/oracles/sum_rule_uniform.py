"""Reference values for the uniform-measure sum-rule integral on lossy models.

For Im v(x) > 0 the y -> 0 limit is the integrand at y = 0, so
(1/pi) * int Im h_m(v(x)) dx with h_m(z) = (1/(2D)) log((D - z)/(-D - z))
is integrated directly with mpmath at 30 digits.
"""

import mpmath as mp

mp.mp.dps = 30
D = mp.mpf("0.5")
X0, X1 = mp.mpf("0.25"), mp.mpf("2.25")


def h_uniform(z):
    return (mp.log(D - z) - mp.log(-D - z)) / (2 * D)


def drude(gamma):
    return lambda w: 1 - 1 / (w * w + 1j * gamma * w)


def lorentz(A, xi, gamma):
    return lambda w: 1 - A / (w * w - xi + 1j * gamma * w)


def value(f):
    def integrand(x):
        v = x * f(mp.sqrt(x))
        return mp.im(h_uniform(v)) / mp.pi
    return mp.quad(integrand, mp.linspace(X0, X1, 41))


def dirac_value(f, xi):
    def integrand(x):
        v = x * f(mp.sqrt(x))
        return mp.im(1 / (xi - v)) / mp.pi
    return mp.quad(integrand, mp.linspace(X0, X1, 81))


def print_dirac():
    for name, f in [("drude_g1", drude(1)), ("lorentz", lorentz(1, 1, mp.mpf("0.2")))]:
        for xi in ["0", "0.25"]:
            print(name, "dirac", xi, mp.nstr(dirac_value(f, mp.mpf(xi)), 15))


if __name__ == "__main__":
    for name, f in [("drude_g0.1", drude(mp.mpf("0.1"))), ("drude_g1", drude(1)),
                    ("lorentz", lorentz(1, 1, mp.mpf("0.2")))]:
        print(name, mp.nstr(value(f), 15))
    print_dirac()
