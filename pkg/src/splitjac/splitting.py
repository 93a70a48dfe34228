"""Splitting data and the principally polarized quotient of two circles.

Splitting data (d, k, lp, l) encodes a pair of tropical elliptic curves of
circumferences lp and l glued along their d-torsion via the parameter k
(coprime to d).  The quotient of the product by the graph of the gluing
carries an induced polarization of type (1, d); twisting by it yields a
principally polarized rank-2 variety whose pairing matrix (in the
distinguished lattice basis) is

    gram = [[d*lp, k*lp], [k*lp, (k^2*lp + l)/d]].

The Selling-ready input form `qpp` is the same matrix with the off-diagonal
sign flipped, so its off-diagonal entry is always negative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import InternalInconsistency, NonPositiveLength, ValidationError
from .matrices import Mat, col2, congruence_act, imat, inv2, row2
from .tav import (
    Tav,
    TavMorphism,
    adjoint,
    circle,
    direct_sum,
    induce_polarization,
    polarization_type,
    pullback_polarization,
)

SFLIP = imat(1, 0, 0, -1)


def check_dk(d: int, k: int) -> None:
    """Validate the discrete half of splitting data."""
    if not isinstance(d, int) or not isinstance(k, int):
        raise ValidationError("d and k must be integers")
    if d < 2:
        raise ValidationError(f"d must be >= 2, got {d}")
    if not 1 <= k <= d - 1:
        raise ValidationError(f"k must satisfy 1 <= k <= d-1, got k={k}, d={d}")
    if gcd(k, d) != 1:
        raise ValidationError(f"k and d must be coprime, got k={k}, d={d}")


@dataclass(frozen=True)
class SplittingData:
    """Gluing degree d, torsion parameter k, and the two circle lengths."""

    d: int
    k: int
    lp: Fraction
    l: Fraction

    def __post_init__(self):
        check_dk(self.d, self.k)
        for name in ("lp", "l"):
            val = Fraction(getattr(self, name))
            if val <= 0:
                raise NonPositiveLength(f"{name} must be a positive rational, got {val}")
            object.__setattr__(self, name, val)


def qpp_raw(sd: SplittingData) -> Mat:
    """Pairing Gram matrix of the principally polarized quotient."""
    d, k, lp, l = sd.d, sd.k, sd.lp, sd.l
    return Mat(((d * lp, k * lp), (k * lp, Fraction(k * k * lp + l, d))))


def qpp(sd: SplittingData) -> Mat:
    """Selling-ready form: `qpp_raw` with the off-diagonal sign flipped."""
    q = congruence_act(SFLIP, qpp_raw(sd))
    if not (q[0, 1] < 0 and q.det() == sd.lp * sd.l):
        raise InternalInconsistency(f"qpp failed its shape checks: {q.rows}")
    return q


@dataclass(frozen=True)
class JppModel:
    """Quotient construction: plain quotient, induced polarization, pp model."""

    sd: SplittingData
    qflat: Mat               # covariant matrix of the quotient map
    zeta: Mat                # induced type-(1,d) polarization on the quotient
    zetapp: Mat              # identity: polarization of the pp model
    gram: Mat                # pp pairing matrix == qpp_raw
    basis_b: tuple           # raw coordinates of the distinguished lattice basis
    product: Tav
    quotient: Tav
    jpp: Tav
    quotient_map: TavMorphism
    splitting_isogeny: TavMorphism  # product -> jpp


def build_jpp(sd: SplittingData) -> JppModel:
    """Run the quotient construction and certify it two ways."""
    d, k = sd.d, sd.k
    prod = direct_sum(circle(sd.lp), circle(sd.l))
    qflat = imat(1, -k, 0, d)
    pairing_g = prod.pairing @ inv2(qflat.map(Fraction))
    quotient = Tav(pairing_g)
    qmor = TavMorphism(prod, quotient, Mat.identity(2), qflat)

    dd = imat(d, 0, 0, d)
    res = induce_polarization(qmor, dd)
    zeta_closed = (dd @ inv2(qflat.map(Fraction))).to_int()
    if res.zeta2 is None or res.zeta2 != zeta_closed:
        raise InternalInconsistency(
            f"induced polarization {res.m.rows} != closed form {zeta_closed.rows}")
    zeta = res.zeta2
    if polarization_type(zeta) != (1, d):
        raise InternalInconsistency(f"induced polarization type {polarization_type(zeta)}")

    gram = quotient.with_polarization(zeta).gram
    if gram != qpp_raw(sd):
        raise InternalInconsistency(f"Gram matrix {gram.rows} != period form")
    jpp = Tav(gram, Mat.identity(2))
    phi = TavMorphism(prod, jpp, msharp=imat(d, k, 0, 1), mflat=qflat)
    if pullback_polarization(phi, jpp.polarization) != dd:
        raise InternalInconsistency("splitting isogeny does not pull back to d*identity")
    basis_b = (tuple(gram[i, 0] for i in range(2)), tuple(gram[i, 1] for i in range(2)))
    return JppModel(sd=sd, qflat=qflat, zeta=zeta, zetapp=jpp.polarization, gram=gram,
                    basis_b=basis_b, product=prod, quotient=quotient, jpp=jpp,
                    quotient_map=qmor, splitting_isogeny=phi)


@dataclass(frozen=True)
class SplitDiagram:
    """Normalized torus maps of the splitting isogeny and its adjoint.

    All matrices act on coordinates in the bases of the second lattices, i.e.
    each circle is R/Z and the quotient's points are written in the
    distinguished lattice basis.
    """

    sd: SplittingData
    phi: Mat       # [[1,-k],[0,d]]: splitting isogeny on points
    phitilde: Mat  # [[d,k],[0,1]]: its adjoint on points
    f1: Mat        # phi restricted to the first circle (2x1)
    f2: Mat        # phi restricted to the second circle (2x1)
    g1: Mat        # first-circle component of phitilde (1x2)
    g2: Mat        # second-circle component of phitilde (1x2)
    kernel_normalized: tuple  # kernel of phi on the product torus, coords in [0,1)
    kernel_raw: tuple         # same points scaled by the circle lengths


def build_diagram(sd: SplittingData) -> SplitDiagram:
    jm = build_jpp(sd)
    phi = jm.splitting_isogeny.mflat
    adj = adjoint(jm.splitting_isogeny, jm.product.polarization, jm.jpp.polarization)
    phitilde = adj.mflat
    d = sd.d
    if phitilde @ phi != imat(d, 0, 0, d) or phi @ phitilde != imat(d, 0, 0, d):
        raise InternalInconsistency("adjoint composite is not multiplication by d")
    f1 = col2(phi[0, 0], phi[1, 0])
    f2 = col2(phi[0, 1], phi[1, 1])
    g1 = row2(phitilde[0, 0], phitilde[0, 1])
    g2 = row2(phitilde[1, 0], phitilde[1, 1])
    checks = {
        "g2@f1": (g2 @ f1)[0, 0] == 0,
        "g1@f2": (g1 @ f2)[0, 0] == 0,
        "g1@f1": (g1 @ f1)[0, 0] == d,
        "g2@f2": (g2 @ f2)[0, 0] == d,
    }
    if not all(checks.values()):
        raise InternalInconsistency(f"diagram identities failed: {checks}")

    kernel_norm = []
    for j in range(d):
        u = Fraction(sd.k * j, d) % 1
        v = Fraction(j, d) % 1
        img = phi @ col2(u, v)
        if img[0, 0] % 1 != 0 or img[1, 0] % 1 != 0:
            raise InternalInconsistency(f"kernel point ({u},{v}) not killed by phi")
        kernel_norm.append((u, v))
    if len({u for u, _ in kernel_norm}) != d or len({v for _, v in kernel_norm}) != d:
        raise InternalInconsistency("kernel is not a graph of order d")
    kernel_raw = tuple((u * sd.lp, v * sd.l) for u, v in kernel_norm)
    return SplitDiagram(sd=sd, phi=phi, phitilde=phitilde, f1=f1, f2=f2, g1=g1, g2=g2,
                        kernel_normalized=tuple(kernel_norm), kernel_raw=kernel_raw)
