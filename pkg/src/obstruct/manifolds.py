"""Torus knots, spliced torus-knot exteriors, Eudave-Munoz knots, and the
"is this manifold a Dehn surgery?" decision pipeline.

The central objects are the graph manifolds obtained by gluing two nontrivial
torus knot exteriors, sending the meridian of each side to the Seifert fiber
of the other.  Such a splice has cyclic first homology of order |abcd - 1|
and linking form values -cd/(abcd-1) and -ab/(abcd-1) on the two meridians.

Obstructions implemented here:

* non-integral slopes: the splice arises from a non-integral surgery on a
  knot if and only if it matches +/- the pattern
  ``splice(T(l, lm-1), T(2, -(2m-1)))``, in which case the knot is the
  Eudave-Munoz knot k(l, m, 0, 0) and the slope is half-integral;
* integral slopes: an n-surgery forces the linking-form residues to be
  squares mod |H_1|, so quadratic non-residues obstruct each sign;
* the changemaker lattice obstruction for -n, when a builtin Goeritz form
  for the splice is available.

Splice homeomorphism is decided only up to the symmetry group generated by
factor swap, the torus-knot identities T(a,b) = T(b,a) = T(-a,-b), and the
global mirror; verdicts that rely on a failed pattern match record that
assumption.
"""

from __future__ import annotations

import concurrent.futures
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import goeritz as _goeritz
from . import lattice as _lattice
from .numtheory import in_S, in_Sprime, square_root_mod

log = logging.getLogger("obstruct.manifolds")


# ---------------------------------------------------------------------------
# torus knots and splices


@dataclass(frozen=True)
class TorusKnot:
    """A torus knot, stored in canonical form.

    Nontrivial knots satisfy |p| > q >= 2 after using T(p,q) = T(q,p) =
    T(-p,-q); every trivial torus knot (either index of absolute value <= 1)
    normalizes to (1, 1) and is flagged by ``is_trivial``.
    """

    p: int
    q: int

    def __post_init__(self) -> None:
        p, q = self.p, self.q
        if gcd(abs(p), abs(q)) != 1:
            raise ValueError(f"torus knot indices must be coprime: ({p}, {q})")
        if min(abs(p), abs(q)) <= 1:
            p, q = 1, 1
        else:
            if abs(p) < abs(q):
                p, q = q, p
            if q < 0:
                p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @staticmethod
    def of(p: int, q: int) -> "TorusKnot":
        return TorusKnot(p, q)

    @property
    def is_trivial(self) -> bool:
        return self.q == 1

    @property
    def product(self) -> int:
        return self.p * self.q

    def mirror(self) -> "TorusKnot":
        return TorusKnot(-self.p, self.q)

    def representatives(self) -> tuple[tuple[int, int], ...]:
        """The four index pairs naming this knot."""
        p, q = self.p, self.q
        return ((p, q), (q, p), (-p, -q), (-q, -p))

    def __str__(self) -> str:
        return f"T({self.p},{self.q})"


@dataclass(frozen=True)
class Splice:
    """The union of two nontrivial torus knot exteriors glued meridian to
    Seifert fiber both ways."""

    first: TorusKnot
    second: TorusKnot

    def __post_init__(self) -> None:
        if self.first.is_trivial or self.second.is_trivial:
            raise ValueError("both torus knots must be nontrivial")

    @staticmethod
    def of(a: int, b: int, c: int, d: int) -> "Splice":
        return Splice(TorusKnot(a, b), TorusKnot(c, d))

    def signed_h1(self) -> int:
        return self.first.product * self.second.product - 1

    def h1_order(self) -> int:
        return abs(self.signed_h1())

    def linking_self(self) -> tuple[Fraction, Fraction]:
        """Linking-form self-pairings of the two meridians, in [0, 1)."""
        n = self.signed_h1()
        return (
            Fraction(-self.second.product, n) % 1,
            Fraction(-self.first.product, n) % 1,
        )

    def mirror(self) -> "Splice":
        return Splice(self.first.mirror(), self.second.mirror())

    def swapped(self) -> "Splice":
        return Splice(self.second, self.first)

    def canonical_key(self, oriented: bool = True) -> tuple:
        keys = [
            ((y.first.p, y.first.q), (y.second.p, y.second.q))
            for y in ((self, self.swapped()) if oriented
                      else (self, self.swapped(), self.mirror(), self.mirror().swapped()))
        ]
        return min(keys)

    def is_equivalent(self, other: "Splice", mirror: bool = True) -> bool:
        """Equality up to factor swap and the torus-knot identities, and up
        to global mirror unless ``mirror`` is False."""
        return self.canonical_key(oriented=not mirror) == other.canonical_key(
            oriented=not mirror
        )

    def __str__(self) -> str:
        return f"splice({self.first},{self.second})"


def h1_order(y: Splice) -> int:
    """|abcd - 1|, the order of the (cyclic) first homology of the splice."""
    return y.h1_order()


def linking_self(y: Splice) -> tuple[Fraction, Fraction]:
    return y.linking_self()


def slope_distance(r1: Fraction, r2: Fraction) -> int:
    """Delta(p1/q1, p2/q2) = |p1 q2 - p2 q1|."""
    r1, r2 = Fraction(r1), Fraction(r2)
    return abs(r1.numerator * r2.denominator - r2.numerator * r1.denominator)


# ---------------------------------------------------------------------------
# integral obstruction (linking form residues)


@dataclass(frozen=True)
class IntegralObstruction:
    """Residue test for realizing the splice by surgery of slope sign * n,
    n = |H_1|.  The tested classes are sign * sgn(abcd-1) * ab (and cd); the
    slope is impossible unless both are squares mod n, and they are squares
    simultaneously because ab * cd = 1 mod n."""

    sign: int
    n: int
    residue_ab: int
    residue_cd: int
    witness: int | None

    @property
    def obstructed(self) -> bool:
        return self.witness is None

    @property
    def status(self) -> str:
        return "obstructed" if self.obstructed else "inconclusive"


def integral_obstruction(y: Splice, sign: int) -> IntegralObstruction:
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    big_n = y.signed_h1()
    n = abs(big_n)
    s0 = 1 if big_n > 0 else -1
    res_ab = sign * s0 * y.first.product % n
    res_cd = sign * s0 * y.second.product % n
    w_ab = square_root_mod(res_ab, n)
    w_cd = square_root_mod(res_cd, n)
    if (w_ab is None) != (w_cd is None):
        raise RuntimeError(
            f"residue classes {res_ab} and {res_cd} mod {n} disagree; "
            "they are inverses and must be squares simultaneously"
        )
    return IntegralObstruction(
        sign=sign, n=n, residue_ab=res_ab, residue_cd=res_cd, witness=w_ab
    )


# ---------------------------------------------------------------------------
# Eudave-Munoz knots


@dataclass(frozen=True)
class EMKnot:
    """Parameters (l, m, n, p) of an Eudave-Munoz knot; n*p = 0 always.

    ``degenerate_warning`` flags parameter ranges (l in {-1,0,1} or m in
    {0,1}) where the construction may degenerate to a torus knot; those
    sporadic exclusions are flagged rather than filtered.
    """

    l: int
    m: int
    n: int
    p: int

    def __post_init__(self) -> None:
        if self.n * self.p != 0:
            raise ValueError("need n = 0 or p = 0")

    @property
    def degenerate_warning(self) -> bool:
        return self.l in (-1, 0, 1) or self.m in (0, 1)

    def __str__(self) -> str:
        return f"k({self.l},{self.m},{self.n},{self.p})"


def em_slope(k: EMKnot) -> Fraction:
    """The half-integral toroidal surgery slope of k(l, m, n, p):
    l(2m-1)(1-lm) - 1/2, corrected by n(2lm-1)^2 or p(2lm-l-1)^2."""
    l, m = k.l, k.m
    r = Fraction(2 * l * (2 * m - 1) * (1 - l * m) - 1, 2)
    if k.p == 0:
        r += k.n * (2 * l * m - 1) ** 2
    else:
        r += k.p * (2 * l * m - l - 1) ** 2
    return r


def em_su2_cyclic(k: EMKnot) -> bool:
    """Whether the half-integral toroidal surgery on k is SU(2)-cyclic:
    p = 0 requires n in {0, 1}; n = 0 requires 2p - 1 to divide l."""
    if k.p == 0 and k.n in (0, 1):
        return True
    return k.n == 0 and k.l % (2 * k.p - 1) == 0


def em_splice_form(k: EMKnot) -> Splice | None:
    """The splice (up to orientation) homeomorphic to the SU(2)-cyclic
    surgery on k, or None for the n = 0, (2p-1) | l knots with p outside
    {0, 1}, whose surgeries are not splices of torus knot exteriors."""
    if not em_su2_cyclic(k):
        raise ValueError(f"{k} does not have an SU(2)-cyclic toroidal surgery")
    l, m = k.l, k.m
    if k.p == 0 and k.n == 0:
        pairs = (l, l * m - 1), (2, -(2 * m - 1))
    elif k.p == 0 and k.n == 1:
        pairs = (-l, l * m - 1), (2, 2 * m + 1)
    elif k.n == 0 and k.p == 1:
        pairs = (-l, m * l - l - 1), (2, 2 * m - 1)
    else:
        return None
    return Splice.of(pairs[0][0], pairs[0][1], pairs[1][0], pairs[1][1])


@dataclass(frozen=True)
class TwistedTorusBraid:
    """The positive braid whose closure is the twisted torus knot
    T(6q+4, 6q^2+6q+1, 2q+2, 2)."""

    q: int
    strands: int
    twisted_torus_params: tuple[int, int, int, int]

    @property
    def word_length(self) -> int:
        q = self.q
        return (6 * q + 3) * (6 * q * q + 6 * q + 1) + 2 * (2 * q + 1)

    def word(self) -> list[int]:
        """Generator indices: the descending run (6q+3 .. 1) repeated
        6q^2+6q+1 times, then the run (2q+1 .. 1) twice."""
        q = self.q
        run1 = list(range(6 * q + 3, 0, -1))
        run2 = list(range(2 * q + 1, 0, -1))
        return run1 * (6 * q * q + 6 * q + 1) + run2 * 2


def twisted_torus_braid(q: int) -> TwistedTorusBraid:
    if q < 1:
        raise ValueError(f"need q >= 1, got {q}")
    return TwistedTorusBraid(
        q=q,
        strands=6 * q + 4,
        twisted_torus_params=(6 * q + 4, 6 * q * q + 6 * q + 1, 2 * q + 2, 2),
    )


# ---------------------------------------------------------------------------
# non-integral classification


@dataclass(frozen=True)
class NonintegralMatch:
    """A match of the splice against +/- splice(T(l,lm-1), T(2,-(2m-1))):
    the manifold is the half-integral toroidal surgery on k(l, m, 0, 0)."""

    l: int
    m: int
    orientation: int  # +1: the splice matches as given; -1: its mirror does

    @property
    def em_knot(self) -> EMKnot:
        return EMKnot(self.l, self.m, 0, 0)

    @property
    def em_slope(self) -> Fraction:
        return em_slope(self.em_knot)

    @property
    def slope_abs(self) -> Fraction:
        return abs(self.em_slope)


def nonintegral_classification(y: Splice) -> NonintegralMatch | None:
    """Decide whether y matches the half-integral surgery pattern, up to
    factor swap, the torus-knot identities, and global mirror.

    For each symmetry image whose second factor can be written T(2, k), the
    pattern forces m = (1 - k)/2; it remains to test whether the other factor
    is T(l, lm-1) for one of its four index representatives."""
    for eps in (1, -1):
        z = y if eps == 1 else y.mirror()
        for f1, f2 in ((z.first, z.second), (z.second, z.first)):
            if f2.q != 2:
                continue
            k = f2.p  # f2 = T(2, k) with k odd
            m = (1 - k) // 2
            for l, v in f1.representatives():
                if v == l * m - 1:
                    return NonintegralMatch(l=l, m=m, orientation=eps)
    return None


# ---------------------------------------------------------------------------
# torus knot surgeries and iterated cables


@dataclass(frozen=True)
class Lens:
    """The lens space of p/q-surgery on the unknot; parameters are kept as
    written (no normalization beyond a sign flip to make p nonnegative)."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p < 0:
            object.__setattr__(self, "p", -self.p)
            object.__setattr__(self, "q", -self.q)
        if self.p == 0:
            raise ValueError("lens space order must be nonzero")

    def h1_order(self) -> int:
        return abs(self.p)

    def reduced(self) -> "Lens":
        return Lens(self.p, self.q % self.p)

    def __str__(self) -> str:
        if self.p == 2:
            return "RP3"
        return f"L({self.p},{self.q})"


@dataclass(frozen=True)
class ConnectedSum:
    summands: tuple[Lens, ...]

    def h1_order(self) -> int:
        out = 1
        for s in self.summands:
            out *= s.h1_order()
        return out

    def __str__(self) -> str:
        return " # ".join(str(s) for s in self.summands)


@dataclass(frozen=True)
class SmallSFS:
    """A Seifert fibered space over S^2 with three singular fibers."""

    base_orders: tuple[int, int, int]
    h1: int

    def h1_order(self) -> int:
        return self.h1

    def __str__(self) -> str:
        o = self.base_orders
        return f"SFS(S2({o[0]},{o[1]},{o[2]}); |H1|={self.h1})"


def torus_knot_surgery(p: int, q: int, r) -> Lens | ConnectedSum | SmallSFS:
    """Moser's classification of r-surgery on the nontrivial torus knot
    T(p, q), keyed by the distance Delta between r and the fiber slope pq:
    Delta = 0 gives L(p,q) # L(q,p); Delta = 1 gives the lens space
    L(mpq+1, mq^2) for r = pq + 1/m; Delta >= 2 is Seifert fibered over
    S^2(|p|, |q|, Delta) with |H_1| the numerator of r.

    The indices are used exactly as given, so printed lens parameters follow
    the caller's (p, q) convention.
    """
    if gcd(abs(p), abs(q)) != 1:
        raise ValueError(f"indices must be coprime: ({p}, {q})")
    if min(abs(p), abs(q)) <= 1:
        raise ValueError(f"T({p},{q}) is trivial")
    r = Fraction(r)
    num, den = r.numerator, r.denominator
    delta = abs(p * q * den - num)
    if delta == 0:
        return ConnectedSum((Lens(p, q), Lens(q, p)))
    if delta == 1:
        m = den if num - p * q * den == 1 else -den
        return Lens(m * p * q + 1, m * q * q)
    return SmallSFS((abs(p), abs(q), delta), abs(num))


@dataclass(frozen=True)
class IteratedTorusKnot:
    """An iterated cable of a torus knot: cables[i] = (m, n) is applied in
    order, innermost first, with n >= 2 and gcd(m, n) = 1 throughout; the
    base must have |p| >= 2 and q >= 2."""

    base: tuple[int, int]
    cables: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        p, q = self.base
        if gcd(abs(p), abs(q)) != 1 or abs(p) < 2 or q < 2:
            raise ValueError(f"invalid base torus knot ({p}, {q})")
        for m, n in self.cables:
            if gcd(abs(m), abs(n)) != 1 or n < 2:
                raise ValueError(f"invalid cable ({m}, {n})")

    @property
    def depth(self) -> int:
        return 1 + len(self.cables)

    def __str__(self) -> str:
        out = f"T({self.base[0]},{self.base[1]})"
        for m, n in self.cables:
            out = f"C({m},{n});" + out
        return out


@dataclass(frozen=True)
class SlopeFamily:
    """The one-parameter family of slopes pq + 1/m (m != 0) on a torus knot
    T(p, q), whose surgeries are the lens spaces L(mpq+1, mq^2)."""

    pq: int
    qsq: int

    def instantiate(self, m: int) -> tuple[Fraction, Lens]:
        if m == 0:
            raise ValueError("family parameter must be nonzero")
        slope = self.pq + Fraction(1, m)
        return slope, Lens(m * self.pq + 1, m * self.qsq)

    def __str__(self) -> str:
        return f"{self.pq} + 1/m (m != 0)"


@dataclass(frozen=True)
class CableSlope:
    """One SU(2)-cyclic slope entry: either a fixed slope with its surgery
    description, or the parametric lens-space family."""

    slope: Fraction | None
    manifold: Lens | ConnectedSum | SmallSFS | None
    family: SlopeFamily | None = None


def cable_su2_cyclic_slopes(knot: IteratedTorusKnot) -> tuple[CableSlope, ...]:
    """All nontrivial SU(2)-cyclic surgery slopes on an iterated torus knot.

    Depth 1: the family pq + 1/m, plus the reducible slope pq exactly when
    p or q is +/-2.  Depth 2: nonempty only for the (2pq+e, 2)-cables,
    e = +/-1, which have slopes 4pq+e (a lens space) and 4pq+2e (a lens
    space summed with RP^3).  Depth >= 3: none.
    """
    p, q = knot.base
    if knot.depth == 1:
        out = [CableSlope(None, None, SlopeFamily(p * q, q * q))]
        if p in (2, -2) or q == 2:
            out.append(
                CableSlope(Fraction(p * q), torus_knot_surgery(p, q, p * q))
            )
        return tuple(out)
    if knot.depth == 2:
        m, n = knot.cables[0]
        for eps in (1, -1):
            if (m, n) == (2 * p * q + eps, 2):
                pq = p * q
                return (
                    CableSlope(
                        Fraction(4 * pq + eps), Lens(4 * pq + eps, 4 * q * q)
                    ),
                    CableSlope(
                        Fraction(4 * pq + 2 * eps),
                        ConnectedSum((Lens(2 * pq + eps, 2 * q * q), Lens(2, 1))),
                    ),
                )
        return ()
    return ()


# ---------------------------------------------------------------------------
# the full "is it a surgery?" verdict


@dataclass(frozen=True)
class ShortcutReport:
    """Residue-set shortcut for the two special splice shapes."""

    shape: str  # "opposite-mirror-pair" for (T(a,b), T(-a,b)); "equal-pair"
    set_name: str  # "S" or "Sprime"
    n: int  # |ab|
    in_set: bool
    indices_exceed_2: bool | None  # the opposite-mirror argument needs a, b > 2


@dataclass(frozen=True)
class ChangemakerReport:
    status: str  # "witness", "obstructed", or "no-form-available"
    form_name: str | None = None
    slope: int | None = None
    sigma: tuple[int, ...] | None = None
    vectors: tuple[tuple[int, ...], ...] | None = None


@dataclass(frozen=True)
class SpliceVerdict:
    splice: Splice
    h1: int
    nonintegral: NonintegralMatch | None
    integral_plus: IntegralObstruction
    integral_minus: IntegralObstruction
    shortcut: ShortcutReport | None
    changemaker: ChangemakerReport | None
    overall: str  # "not-any-surgery", "nonintegral-surgery", "inconclusive"
    assumptions: tuple[str, ...]


_SYMMETRY_ASSUMPTION = (
    "splice homeomorphism decided only up to factor swap, index identities, "
    "and global mirror"
)


def _shortcut_report(y: Splice) -> ShortcutReport | None:
    f1, f2 = y.first, y.second
    if f2 == f1.mirror():
        n = abs(f1.product)
        return ShortcutReport(
            shape="opposite-mirror-pair",
            set_name="S",
            n=n,
            in_set=in_S(n),
            indices_exceed_2=abs(f1.p) > 2 and f1.q > 2,
        )
    if f1 == f2:
        n = abs(f1.product)
        return ShortcutReport(
            shape="equal-pair",
            set_name="Sprime",
            n=n,
            in_set=in_Sprime(n),
            indices_exceed_2=None,
        )
    return None


def builtin_gram_for(y: Splice) -> tuple[str, _lattice.GramMatrix] | None:
    """A builtin Goeritz form presenting the orientation on which the
    changemaker test applies to surgery slope -|H_1|, if one is available."""
    f1, f2 = y.first, y.second
    if f1.q == 2 and f2.q == 2 and f1.p >= 3 and f2.p >= 3:
        a, b = sorted(((f1.p - 1) // 2, (f2.p - 1) // 2))
        return f"fig3-black({a},2,{b},2)", _goeritz.family_2odd_2odd(a, b)
    if {f1, f2} == {TorusKnot(3, 5), TorusKnot(-3, 5)}:
        return "L35-white", _goeritz.goeritz_matrix(_goeritz.l35_white_graph())
    return None


def _changemaker_report(y: Splice) -> ChangemakerReport:
    form = builtin_gram_for(y)
    if form is None:
        return ChangemakerReport(status="no-form-available")
    name, gram = form
    n = y.h1_order()
    result = _lattice.changemaker_obstruction(gram, n)
    if result.obstructed:
        return ChangemakerReport(status="obstructed", form_name=name, slope=-n)
    emb = result.first()
    return ChangemakerReport(
        status="witness",
        form_name=name,
        slope=-n,
        sigma=emb.sigma.entries,
        vectors=emb.vectors,
    )


def not_surgery_verdict(y: Splice, with_changemaker: bool = False) -> SpliceVerdict:
    """Assemble every obstruction for y into one structured verdict.

    ``overall`` is "not-any-surgery" exactly when the non-integral pattern
    fails and both integral slopes are ruled out, with a changemaker
    obstruction allowed to settle the -n side when requested.
    """
    nonintegral = nonintegral_classification(y)
    plus = integral_obstruction(y, +1)
    minus = integral_obstruction(y, -1)
    shortcut = _shortcut_report(y)
    changemaker = _changemaker_report(y) if with_changemaker else None

    assumptions: list[str] = []
    if nonintegral is None:
        minus_ruled = minus.obstructed or (
            changemaker is not None and changemaker.status == "obstructed"
        )
        if plus.obstructed and minus_ruled:
            overall = "not-any-surgery"
        else:
            overall = "inconclusive"
        assumptions.append(_SYMMETRY_ASSUMPTION)
    else:
        overall = "nonintegral-surgery"

    return SpliceVerdict(
        splice=y,
        h1=y.h1_order(),
        nonintegral=nonintegral,
        integral_plus=plus,
        integral_minus=minus,
        shortcut=shortcut,
        changemaker=changemaker,
        overall=overall,
        assumptions=tuple(assumptions),
    )


# ---------------------------------------------------------------------------
# census of the (2, odd)-(2, odd) splices


@dataclass(frozen=True)
class CensusRow:
    a: int
    b: int
    n: int
    status: str  # "witness" or "obstructed"
    sigma: tuple[int, ...] | None


def _census_row(pair: tuple[int, int]) -> CensusRow:
    a, b = pair
    n = 4 * (2 * a + 1) * (2 * b + 1) - 1
    result = _lattice.changemaker_obstruction(_goeritz.family_2odd_2odd(a, b), n)
    emb = result.first()
    log.debug("census row (%d,%d): n=%d %s", a, b, n, result.status)
    return CensusRow(a, b, n, result.status, emb.sigma.entries if emb else None)


def census_2odd(max_product: int = 341, jobs: int = 1) -> list[CensusRow]:
    """Changemaker verdicts for every splice of (2, 2a+1) and (2, 2b+1)
    torus knot exteriors with 1 <= a <= b and (2a+1)(2b+1) <= max_product,
    at surgery slope -|H_1| = -(4(2a+1)(2b+1) - 1).

    Rows are sorted by (a, b); with jobs > 1 rows are evaluated in parallel
    and merged back in order, so the output is schedule-independent.
    """
    pairs = []
    a = 1
    while (2 * a + 1) * (2 * a + 1) <= max_product:
        b = a
        while (2 * a + 1) * (2 * b + 1) <= max_product:
            pairs.append((a, b))
            b += 1
        a += 1
    if jobs > 1 and len(pairs) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_census_row, pairs))
    return [_census_row(pair) for pair in pairs]
