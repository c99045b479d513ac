"""The centered-binomial, discrete-sine, and compressing polynomial families.

All three families are represented exactly: `Poly` keeps monomial
coefficients as Fractions, and the family constructors additionally attach a
sum-of-products view used for fast cancellation-free evaluation. The
six-periodic integer wave (0, 1, 1, 0, -1, -1, ...) that the discrete sine
collapses onto near the origin lives here too.
"""

from fractions import Fraction
from math import factorial

from .exact import InternalConsistencyError

SIGMA = (0, 1, 1, 0, -1, -1)


def six_wave(m) -> int:
    """The 6-periodic wave 0, 1, 1, 0, -1, -1 at integer m (true modulo)."""
    if isinstance(m, Fraction):
        if m.denominator != 1:
            raise ValueError(f"six_wave needs an integer argument, got {m}")
        m = m.numerator
    return SIGMA[m % 6]


class Poly:
    """Dense univariate polynomial over Q, coefficients in ascending order.

    `sum_view`, when present, is a tuple of (sign, j) pairs meaning this
    polynomial equals sum of sign * centered_binomial(j); evaluation can then
    run through exact products instead of the expanded coefficients.
    """

    __slots__ = ("coeffs", "sum_view")

    def __init__(self, coeffs, sum_view=None):
        cs = [Fraction(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.sum_view = sum_view

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({self.as_text()!r})"

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(other.coeffs) + [Fraction(0)] * (n - len(other.coeffs))
        return Poly([x + y for x, y in zip(a, b)])

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def shift(self, h) -> "Poly":
        """The composition x -> f(x + h)."""
        h = Fraction(h)
        out = Poly([self.coeffs[-1]])
        xh = Poly([h, 1])
        for c in reversed(self.coeffs[:-1]):
            out = out * xh + Poly([c])
        return out

    def derivative(self) -> "Poly":
        if len(self.coeffs) == 1:
            return Poly([0])
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def as_text(self) -> str:
        """Human form, descending powers, e.g. 'x^3/6 - 7x/6'."""
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0 and not (k == 0 and not parts):
                continue
            num, den = abs(c.numerator), c.denominator
            if k == 0:
                core = str(num)
            else:
                var = "x" if k == 1 else f"x^{k}"
                core = var if num == 1 else f"{num}{var}"
            if den != 1:
                core += f"/{den}"
            if not parts:
                parts.append(core if c >= 0 else f"-{core}")
            else:
                parts.append(f"+ {core}" if c > 0 else f"- {core}")
        return " ".join(parts)


def _binomial_roots_squared(d):
    # squared roots of the degree-d centered binomial: integers i for odd d,
    # half-odd (2i-1)/2 for even d
    k = d // 2
    if d % 2:
        return [Fraction(i * i) for i in range(1, k + 1)]
    return [Fraction((2 * i - 1) ** 2, 4) for i in range(1, k + 1)]


def centered_binomial(d: int) -> Poly:
    """Degree-d integer-valued polynomial with symmetric rational roots.

    Even degree 2j: (1/(2j)!) * prod_{i=1..j} (x^2 - ((2i-1)/2)^2).
    Odd degree 2j+1: (1/(2j+1)!) * x * prod_{i=1..j} (x^2 - i^2).
    Degree 0 is the constant 1 (empty product), degree 1 is x.
    """
    if d < 0:
        raise ValueError("degree must be nonnegative")
    p = Poly([1]) if d % 2 == 0 else Poly([0, 1])
    for rr in _binomial_roots_squared(d):
        p = p * Poly([-rr, 0, 1])
    p = p * Fraction(1, factorial(d))
    p.sum_view = ((1, d),)
    return p


def discrete_sine(d: int) -> Poly:
    """Degree-d alternating sum of same-parity centered binomials.

    Matches the six-periodic wave on a band around the origin and grows like
    x^d/d! outside it; odd degrees take integer values on the integers, even
    degrees on the half-integers.
    """
    if d < 1:
        raise ValueError("degree must be at least 1")
    k, parity = divmod(d, 2)
    view = tuple(((-1) ** (k - j), 2 * j + parity) for j in range(k + 1))
    total = Poly([0])
    for sign, j in view:
        total = total + centered_binomial(j) * sign
    total.sum_view = view
    return total


def compressing_poly(d: int) -> Poly:
    """Degree-d integer-valued polynomial mapping [d+6] into a shorter
    initial segment ([d+5] for even d, [d+4] for odd d)."""
    if d < 2:
        raise ValueError("degree must be at least 2")
    s = discrete_sine(d)
    shifted = s.shift(Fraction(-(2 * 3 + d + 1), 2))  # x -> x - 3 - (d+1)/2
    if d % 2 == 0:
        return shifted + 2
    return shifted - Poly([0, 1]) + (d + 6)


def central_difference(f: Poly) -> Poly:
    """f(x + 1/2) - f(x - 1/2); drops the degree by exactly one."""
    return f.shift(Fraction(1, 2)) - f.shift(Fraction(-1, 2))


# -- fast exact evaluation ---------------------------------------------------
#
# The grid checks evaluate these families at thousands of rational points
# with large d, where Horner on expanded coefficients costs big-rational
# normalizations per term. The product structure gives the same exact values
# with integer numerators over a single known denominator.

def _sine_at_half(d: int, q: int) -> Fraction:
    """Exact discrete_sine(d) at x = q/2 through incremental products."""
    k, parity = divmod(d, 2)
    if parity == 1:
        acc = q
        nums = [acc]
        for i in range(1, k + 1):
            acc *= q * q - 4 * i * i
            nums.append(acc)
    else:
        acc = 1
        nums = [acc]
        for i in range(1, k + 1):
            acc *= q * q - (2 * i - 1) ** 2
            nums.append(acc)
    total = 0
    ratio = 1  # d! / (2j+parity)!, built downward from j = k
    for j in range(k, -1, -1):
        term = nums[j] * ratio * 4 ** (k - j)
        total += term if (k - j) % 2 == 0 else -term
        n = 2 * j + parity
        if j > 0:
            ratio *= n * (n - 1)
    den = 4**k * factorial(d)
    if parity == 1:
        den *= 2
    return Fraction(total, den)


def discrete_sine_value(d: int, x) -> Fraction:
    """Exact value of discrete_sine(d) at rational x without expanding
    coefficients."""
    x = Fraction(x)
    two_x = 2 * x
    if two_x.denominator == 1:
        return _sine_at_half(d, two_x.numerator)
    k, parity = divmod(d, 2)
    x2 = x * x
    acc = x if parity else Fraction(1)
    nums = [acc]
    roots = _binomial_roots_squared(2 * k + parity)
    for rr in roots:
        acc = acc * (x2 - rr)
        nums.append(acc)
    total = Fraction(0)
    ratio = 1
    for j in range(k, -1, -1):
        term = nums[j] * ratio
        total += term if (k - j) % 2 == 0 else -term
        n = 2 * j + parity
        if j > 0:
            ratio *= n * (n - 1)
    return total / factorial(d)


def _quarter_numerators(d: int, q: int):
    # the root product at x = q/4 has factors (q^2 - u_i)/16 with integer
    # u_i: 16 i^2 for odd d, 4 (2i-1)^2 for even d
    k = d // 2
    if d % 2:
        return [q * q - 16 * i * i for i in range(1, k + 1)]
    return [q * q - 4 * (2 * i - 1) ** 2 for i in range(1, k + 1)]


def binomial_value(d: int, x) -> Fraction:
    """Exact centered_binomial(d) value via the root product."""
    x = Fraction(x)
    quarters = 4 * x
    if quarters.denominator == 1:
        # quarter-grid points: all numerator work in plain integers
        q = quarters.numerator
        k = d // 2
        p = 1
        for n in _quarter_numerators(d, q):
            p *= n
        if d % 2:
            return Fraction(q * p, 4 * 16**k * factorial(d))
        return Fraction(p, 16**k * factorial(d))
    x2 = x * x
    acc = x if d % 2 else Fraction(1)
    for rr in _binomial_roots_squared(d):
        acc *= x2 - rr
    return acc / factorial(d)


def binomial_derivative_value(d: int, x) -> Fraction:
    """Exact derivative of centered_binomial(d) via exclusion products."""
    x = Fraction(x)
    if d == 0:
        return Fraction(0)
    quarters = 4 * x
    if quarters.denominator == 1:
        q = quarters.numerator
        k = d // 2
        ns = _quarter_numerators(d, q)
        pre = [1] * (k + 1)
        for i in range(k):
            pre[i + 1] = pre[i] * ns[i]
        suf = [1] * (k + 1)
        for i in range(k - 1, -1, -1):
            suf[i] = suf[i + 1] * ns[i]
        s = sum(pre[j] * suf[j + 1] for j in range(k))
        if d % 2 == 0:
            return Fraction(8 * q * s, 16**k * factorial(d))
        return Fraction(pre[k] + 2 * q * q * s, 16**k * factorial(d))
    x2 = x * x
    factors = [x2 - rr for rr in _binomial_roots_squared(d)]
    n = len(factors)
    pre = [Fraction(1)] * (n + 1)
    for i in range(n):
        pre[i + 1] = pre[i] * factors[i]
    suf = [Fraction(1)] * (n + 1)
    for i in range(n - 1, -1, -1):
        suf[i] = suf[i + 1] * factors[i]
    g = pre[n]
    gprime = 2 * x * sum(pre[j] * suf[j + 1] for j in range(n))
    if d % 2 == 0:
        return gprime / factorial(d)
    return (g + x * gprime) / factorial(d)


def exact_value(f: Poly, x) -> Fraction:
    """Evaluate through the sum-of-products view when one is attached,
    falling back to Horner on the expanded coefficients."""
    if f.sum_view is None:
        return f(x)
    x = Fraction(x)
    total = Fraction(0)
    for sign, j in f.sum_view:
        total += sign * binomial_value(j, x)
    return total


class SineTable:
    """Integer values of an odd-degree discrete sine over [-M, M].

    Construction proves integrality of every entry, odd symmetry, and
    agreement with the six-periodic wave on the central band
    |m| <= (d+1)/2; any violation is an internal consistency error since it
    can only come from a polynomial-engine bug.
    """

    __slots__ = ("d", "bound", "_values")

    def __init__(self, d: int, bound: int):
        if d % 2 == 0 or d < 3:
            raise ValueError(f"degree must be odd and >= 3, got {d}")
        if bound < (d + 5) // 2:
            raise ValueError(f"range bound {bound} < (d+5)/2 = {(d + 5) // 2}")
        self.d = d
        self.bound = bound
        vals = []
        for m in range(-bound, bound + 1):
            v = _sine_at_half(d, 2 * m)
            if v.denominator != 1:
                raise InternalConsistencyError(
                    f"non-integer table value at d={d}, m={m}: {v}")
            vals.append(v.numerator)
        self._values = vals
        shift = 3 * (d - 1) // 2
        for m in range(-(d + 1) // 2, (d + 1) // 2 + 1):
            if self[m] != six_wave(m + shift):
                raise InternalConsistencyError(
                    f"wave disagreement at d={d}, m={m}")
        for m in range(1, bound + 1):
            if self[m] != -self[-m]:
                raise InternalConsistencyError(
                    f"odd symmetry broken at d={d}, m={m}")

    def __getitem__(self, m: int) -> int:
        if not -self.bound <= m <= self.bound:
            raise InternalConsistencyError(
                f"sine table range exceeded: |{m}| > {self.bound} (d={self.d})")
        return self._values[m + self.bound]

    def items(self):
        for m in range(-self.bound, self.bound + 1):
            yield m, self._values[m + self.bound]
