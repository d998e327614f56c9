"""Incidence algebra on the poset of ordered set partitions.

Bracket factorials, the factorial zeta and Moebius functions, generalized
binomial families, the two convolutions, and the correspondence between
multiplicative functions and composition of truncated power series.

All arithmetic is exact; values live in Fraction or in any commutative
ring supporting +, * and scalar Fraction multiplication (the symbolic
polynomials from ospart.symbolic in particular).
"""

from fractions import Fraction
from math import factorial

from . import _kernels as K
from .partitions import OrderedSetPartition, SetPartition, interval_type


def _pair_type(sigma, pi):
    """Interval type for an OP pair, or block-restriction counts for SP."""
    if isinstance(sigma, SetPartition) and isinstance(pi, SetPartition):
        if sigma.n != pi.n:
            raise ValueError("mismatched ground sets")
        if not sigma.refines(pi):
            raise ValueError("incomparable set partitions")
        owner = {x: k for k, blk in enumerate(pi.blocks) for x in blk}
        counts = [0] * len(pi.blocks)
        for blk in sigma.blocks:
            counts[owner[blk[0]]] += 1
        return tuple(counts)
    return interval_type(sigma, pi)


def bracket(sigma, pi) -> int:
    """[sigma:pi] = product over pi-blocks of the restriction block counts."""
    r = 1
    for k in _pair_type(sigma, pi):
        r *= k
    return r


def bracket_factorial(sigma, pi) -> int:
    """[sigma:pi]! = product of factorials of the restriction block counts."""
    r = 1
    for k in _pair_type(sigma, pi):
        r *= factorial(k)
    return r


def zeta_tilde(sigma, pi) -> Fraction:
    """Factorial zeta function 1/[sigma:pi]!."""
    return Fraction(1, bracket_factorial(sigma, pi))


def mu_tilde(sigma, pi) -> Fraction:
    """Factorial Moebius function (-1)^(|sigma|-|pi|)/[sigma:pi]."""
    t = _pair_type(sigma, pi)
    sign = -1 if (sum(t) - len(t)) % 2 else 1
    return Fraction(sign, bracket(sigma, pi))


def mobius_sp(sigma, pi) -> int:
    """Moebius function of the set-partition lattice on a comparable pair."""
    r = 1
    for k in _pair_type(sigma, pi):
        r *= (-1) ** (k - 1) * factorial(k - 1)
    return r


def generalized_binomial(t, k: int):
    """binom(t, k) = t(t-1)...(t-k+1)/k! for numbers or ring elements."""
    if k < 0:
        raise ValueError("k must be >= 0")
    num = 1
    for i in range(k):
        num = num * (t - i)
    if isinstance(num, int):
        return Fraction(num, factorial(k))
    return num * Fraction(1, factorial(k))


def beta(t, sigma, pi):
    """beta_t(sigma,pi) = prod binom(t, k_i) over the interval type."""
    r = 1
    for k in _pair_type(sigma, pi):
        r = r * generalized_binomial(t, k)
    return r


def beta_vec(ts, sigma, pi):
    """beta with one parameter per pi-block."""
    t_ = _pair_type(sigma, pi)
    if len(ts) < len(t_):
        raise ValueError("need one parameter per block of pi")
    r = 1
    for tj, k in zip(ts, t_):
        r = r * generalized_binomial(tj, k)
    return r


def _psi_compositions(sigma, rho, pi):
    """Per pi-block, the composition of sigma-run lengths induced by rho.

    This is the image of rho under the interval isomorphism: block i of pi
    contributes the sizes |G| of the rho-groups of sigma-blocks inside it.
    """
    bm_sp = K.block_map(sigma.word, pi.word)
    bm_sr = K.block_map(sigma.word, rho.word)
    bm_rp = K.block_map(rho.word, pi.word)
    if bm_sp is None or bm_sr is None or bm_rp is None:
        raise ValueError("need sigma <= rho <= pi")
    p = len(pi)
    groups = [[] for _ in range(p + 1)]  # pi-block -> list of group sizes
    sizes = {}
    for i in range(1, len(sigma) + 1):
        r = bm_sr[i]
        sizes[r] = sizes.get(r, 0) + 1
    for r in range(1, len(rho) + 1):
        groups[bm_rp[r]].append(sizes[r])
    return [tuple(g) for g in groups[1:]]


def gamma_vec(ts, sigma, rho, pi):
    """gamma with one parameter per pi-block, factorizing over rho's groups."""
    comps = _psi_compositions(sigma, rho, pi)
    if len(ts) < len(comps):
        raise ValueError("need one parameter per block of pi")
    r = 1
    for tj, comp in zip(ts, comps):
        for g in comp:
            r = r * generalized_binomial(tj, g)
    return r


# ---------------------------------------------------------------------------
# function families
# ---------------------------------------------------------------------------

class AdaptedFunction:
    """Function of comparable pairs determined by the interval type."""

    def __init__(self, family):
        self.family = family
        self._memo = {}

    def __call__(self, sigma, pi):
        t = _pair_type(sigma, pi)
        try:
            return self._memo[t]
        except KeyError:
            val = self._memo[t] = self.family(t)
            return val


class MultiplicativeFunction(AdaptedFunction):
    """Adapted function with a product defining family f_(k_i) = prod f_k."""

    def __init__(self, sequence):
        self.sequence = sequence
        super().__init__(self._eval)

    def _eval(self, t):
        r = self.sequence(t[0])
        for k in t[1:]:
            r = r * self.sequence(k)
        return r

    def defining_sequence(self, n: int):
        return self.sequence(n)

    def lift(self):
        """Quasi-multiplicative lift with a row-independent defining array."""
        return QuasiMultiplicativeFunction(lambda j, k: self.sequence(k))


class QuasiMultiplicativeFunction:
    """Function of chains sigma <= rho <= pi with a defining array f_(j,k)."""

    def __init__(self, array):
        self.array = array

    def __call__(self, sigma, rho, pi):
        r = 1
        for j, comp in enumerate(_psi_compositions(sigma, rho, pi), start=1):
            for g in comp:
                r = r * self.array(j, g)
        return r


zeta_tilde_fn = MultiplicativeFunction(lambda n: Fraction(1, factorial(n)))
mu_tilde_fn = MultiplicativeFunction(lambda n: Fraction((-1) ** (n - 1), n))


def delta(sigma, pi):
    """Unit of convolution."""
    return Fraction(1) if sigma == pi else Fraction(0)


def convolve(f, g, sigma, pi):
    """(f*g)(sigma,pi) = sum over rho in [sigma,pi] of f(sigma,rho) g(rho,pi)."""
    if sigma.n != pi.n:
        raise ValueError("mismatched ground sets")
    total = 0
    for w in K.interval_words(sigma.word, pi.word):
        rho = OrderedSetPartition._raw(sigma.n, w)
        total = total + f(sigma, rho) * g(rho, pi)
    return total


def convolve_tri(f, g, sigma, pi):
    """(f (x) g)(sigma,pi) = sum over rho of f(sigma,rho,pi) g(rho,pi)."""
    if sigma.n != pi.n:
        raise ValueError("mismatched ground sets")
    total = 0
    for w in K.interval_words(sigma.word, pi.word):
        rho = OrderedSetPartition._raw(sigma.n, w)
        total = total + f(sigma, rho, pi) * g(rho, pi)
    return total


def convolution_sequence(f, g, n: int):
    """Defining sequence entry (f*g)_n = (f*g)(0^_n, 1^_n)."""
    return convolve(f, g, OrderedSetPartition.singletons(n),
                    OrderedSetPartition.one_block(n))


# ---------------------------------------------------------------------------
# truncated power series (no constant term)
# ---------------------------------------------------------------------------

class TruncatedSeries:
    """c_1 z + c_2 z^2 + ... + c_D z^D with exact coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        if not self.coeffs:
            raise ValueError("order must be >= 1")

    @property
    def order(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        if not 1 <= k <= self.order:
            raise IndexError(k)
        return self.coeffs[k - 1]

    def __eq__(self, other):
        return isinstance(other, TruncatedSeries) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"TruncatedSeries({list(self.coeffs)})"

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs, start=1):
            if c == 0:
                continue
            parts.append(f"{c}*z" if k == 1 else f"{c}*z^{k}")
        return " + ".join(parts) if parts else "0"


def gen_series(f: MultiplicativeFunction, order: int) -> TruncatedSeries:
    """Z_f(z) = sum f_n z^n truncated at the given order."""
    if order < 1:
        raise ValueError("order must be >= 1")
    return TruncatedSeries([f.defining_sequence(n) for n in range(1, order + 1)])


def compose(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """a(b(z)) truncated; both series are constant-term-free by construction."""
    order = min(a.order, b.order)
    out = [Fraction(0)] * (order + 1)
    power = [Fraction(0)] * (order + 1)  # running b(z)^k
    power[0] = Fraction(1)
    for k in range(1, order + 1):
        nxt = [Fraction(0)] * (order + 1)
        for i, ci in enumerate(power):
            if ci == 0:
                continue
            for j in range(1, order + 1 - i):
                nxt[i + j] += ci * b.coeffs[j - 1]
        power = nxt
        ak = a.coeffs[k - 1]
        if ak:
            for d in range(1, order + 1):
                out[d] += ak * power[d]
    return TruncatedSeries(out[1:])
