"""Rank-2 Drinfeld modules over extensions of the residue field or over
Artinian test rings: the action phi, the factorization phi(varpi) = V * F in
characteristic the place, Hasse invariant, torsion, canonical subgroups, and
quotient isogenies.

A module is the data (base, g, delta) with delta a unit; the action of T is
gamma_T + g*t + delta*t^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .basearith import APoly, FieldExt, PrimePlace
from .skew import SkewPoly, kernel_points, right_divide, stable_right_divisors, tau


class DrinfeldModule:
    __slots__ = ("base", "g", "delta")

    def __init__(self, base, g, delta):
        if _is_zero_like(delta) or (hasattr(delta, "is_unit") and not delta.is_unit()):
            raise ValueError("delta must be a unit (rank exactly 2)")
        self.base = base
        self.g = g
        self.delta = delta

    @property
    def place(self) -> PrimePlace:
        return self.base.place

    @property
    def gamma_T(self):
        return self.base.gamma_T

    def phi_T(self) -> SkewPoly:
        return SkewPoly(self.base, [self.gamma_T, self.g, self.delta])

    def phi_eval(self, a: APoly) -> SkewPoly:
        """The action phi(a); twist degree is 2*deg(a)."""
        result = SkewPoly(self.base, [])
        action = self.phi_T()
        for c in reversed(a.coeffs):
            result = result * action + SkewPoly(self.base, [self.base.embed_fq(c)])
        return result

    def is_char_p(self) -> bool:
        """Whether the base has characteristic the place: gamma(varpi) = 0."""
        return _is_zero_like(self.base.gamma_eval(self.place.varpi))

    def frob_twist(self, e: int = 1) -> "DrinfeldModule":
        """The module with coefficients raised to the q^e power."""
        qe = self.place.q ** e
        return DrinfeldModule(self.base, self.g ** qe, self.delta ** qe)

    def rescale(self, c) -> "DrinfeldModule":
        """The isomorphic module in the coordinate y = c*x, i.e. the action
        conjugated by c: coefficients pick up c^(1 - q^i)."""
        q = self.place.q
        return DrinfeldModule(self.base,
                              c ** (1 - q) * self.g,
                              c ** (1 - q * q) * self.delta)

    def orbit_translate(self, c) -> "DrinfeldModule":
        """The rescaling-orbit action sigma_c(g, delta) =
        (c^(q-1) g, c^(q^2-1) delta); equals rescale(1/c)."""
        q = self.place.q
        return DrinfeldModule(self.base,
                              c ** (q - 1) * self.g,
                              c ** (q * q - 1) * self.delta)

    def j_invariant(self):
        """Coarse moduli coordinate g^(q+1)/delta."""
        q = self.place.q
        num = self.g ** (q + 1)
        if hasattr(self.delta, "inverse"):
            return num * self.delta.inverse()
        return num / self.delta

    def base_change(self, ext: FieldExt) -> "DrinfeldModule":
        """Transport to a larger extension of the same place."""
        if not isinstance(self.base, FieldExt):
            raise ValueError("base change is defined for field bases")
        if ext.place != self.place or ext.m % self.base.m != 0:
            raise ValueError("not an extension of the base")
        emb = ext.field.embedding_from(self.base.field)
        if emb(self.base.gamma_T) != ext.gamma_T:
            # the canonical embedding must match the structure maps; find a
            # conjugate embedding that does
            emb = _gamma_compatible_embedding(self.base, ext)
        return DrinfeldModule(ext, emb(self.g), emb(self.delta))

    def __eq__(self, other):
        return (isinstance(other, DrinfeldModule) and other.base is self.base
                and other.g == self.g and other.delta == self.delta)

    def __hash__(self):
        return hash((id(self.base), self.g, self.delta))

    def __repr__(self):
        return f"DrinfeldModule(gamma={self.gamma_T}, g={self.g}, delta={self.delta})"

    def as_record(self) -> dict:
        """JSON-ready coarse description."""
        rec = {
            "gamma_T": str(self.gamma_T),
            "g": str(self.g),
            "delta": str(self.delta),
            "j": str(self.j_invariant()),
        }
        if isinstance(self.base, FieldExt) and self.is_char_p():
            rec["hasse"] = str(self.hasse_invariant())
            rec["ordinary"] = self.is_ordinary()
        return rec

    # -- characteristic-p structure ---------------------------------------

    def frobenius_verschiebung(self):
        """The factorization phi(varpi) = V * F with F = t^d.  Requires a
        char-p base; checks that the twist coefficients of phi(varpi) below
        degree d vanish and that V * t^d re-multiplies exactly."""
        if not self.is_char_p():
            raise ValueError("Frobenius/Verschiebung requires gamma(varpi) = 0")
        d = self.place.d
        pv = self.phi_eval(self.place.varpi)
        for i in range(d):
            if not _is_zero_like(pv.coefficient(i)):
                raise AssertionError(
                    f"phi(varpi) has nonzero twist coefficient at degree {i}: "
                    f"{pv.coefficient(i)}")
        V = Verschiebung(self, SkewPoly(self.base, [pv.coefficient(i + d)
                                                    for i in range(d + 1)]))
        F = Isogeny(self, self.frob_twist(d), tau(self.base, d))
        if V.poly * F.u != pv:
            raise AssertionError("V * F does not re-multiply to phi(varpi)")
        return F, V

    def hasse_invariant(self):
        """The constant coefficient of V; zero exactly at supersingular
        modules."""
        _, V = self.frobenius_verschiebung()
        return V.poly.coefficient(0)

    def is_ordinary(self) -> bool:
        return not _is_zero_like(self.hasse_invariant())

    def torsion_points(self, n: int, ext: FieldExt) -> "TorsionModule":
        """The group of varpi^n torsion points rational over `ext`, with its
        A-module structure.  Partial splitting is reported, not an error."""
        E = self.base_change(ext) if ext is not self.base else self
        u = E.phi_eval(self.place.varpi ** n)
        points, basis = kernel_points(u, ext)
        geometric = ext.q ** (u.degree - u.tau_valuation()) if not u.is_zero() else 0
        orders = {}
        for x in points:
            s = 0
            y = x
            while not _is_zero_like(y):
                y = E.phi_eval(self.place.varpi).eval(y)
                s += 1
            orders[x] = s
        return TorsionModule(E, n, tuple(points), tuple(basis), orders,
                             len(points) == geometric)

    def canonical_subgroup(self, n: int = 1) -> "SubgroupScheme":
        """The connected order-q^(dn) piece ker(t^(dn)) of the varpi^n
        torsion; rejects supersingular modules."""
        if not self.is_ordinary():
            raise ValueError("canonical subgroup requires an ordinary module")
        d = self.place.d
        u = tau(self.base, d * n)
        H = SubgroupScheme(self, u)
        if H.kind != SubgroupKind.CONNECTED:
            raise AssertionError("canonical subgroup is not connected")
        return H

    def quotient_by_kernel(self, H: "SubgroupScheme") -> "Isogeny":
        """The isogeny E -> E/H given by the kernel polynomial u of H: the
        target action phi' solves phi'(T)*u = u*phi(T) by coefficient
        matching; fails with a witness when H is not A-stable."""
        u = H.u
        w = u * self.phi_T()
        quot, rem = right_divide(w, u)
        if not rem.is_zero():
            raise ValueError(f"kernel polynomial {u} is not A-stable: "
                             f"remainder {rem}")
        if quot.degree != 2:
            raise ValueError(f"quotient action has twist degree {quot.degree}")
        b0 = quot.coefficient(0)
        if b0 != self.gamma_T and b0 != self.base.qpow(self.gamma_T, u.tau_valuation()):
            raise AssertionError(f"quotient does not preserve the structure map: {b0}")
        target = DrinfeldModule(self.base, quot.coefficient(1), quot.coefficient(2))
        return Isogeny(self, target, u)


class SubgroupKind(Enum):
    CONNECTED = "connected"
    ETALE = "etale"
    MIXED = "mixed"


class SubgroupScheme:
    """A finite A-stable subgroup scheme of E, presented by a monic kernel
    polynomial u; its order is q^deg(u)."""

    __slots__ = ("parent", "u", "kind")

    def __init__(self, parent: DrinfeldModule, u: SkewPoly):
        if not u.is_monic():
            raise ValueError("kernel polynomial must be monic")
        _, rem = right_divide(u * parent.phi_T(), u)
        if not rem.is_zero():
            raise ValueError(f"kernel polynomial {u} is not A-stable")
        self.parent = parent
        self.u = u
        v = u.tau_valuation()
        if v == u.degree:
            self.kind = SubgroupKind.CONNECTED
        elif v == 0:
            self.kind = SubgroupKind.ETALE
        else:
            self.kind = SubgroupKind.MIXED

    @property
    def order(self) -> int:
        return self.parent.place.q ** self.u.degree

    @property
    def lie(self):
        return self.u.coefficient(0)

    def __repr__(self):
        return f"Subgroup(u={self.u}, {self.kind.value}, order={self.order})"


class Isogeny:
    """u: source -> target with the intertwining identity
    phi_target(T) * u = u * phi_source(T), verified on construction."""

    __slots__ = ("source", "target", "u")

    def __init__(self, source: DrinfeldModule, target: DrinfeldModule, u: SkewPoly):
        if target.phi_T() * u != u * source.phi_T():
            raise ValueError("not an isogeny: intertwining identity fails")
        self.source = source
        self.target = target
        self.u = u

    @property
    def lie(self):
        """The induced map on tangent spaces (the constant coefficient)."""
        return self.u.coefficient(0)

    def __repr__(self):
        return f"Isogeny(u={self.u})"


@dataclass(frozen=True)
class Verschiebung:
    """The inner factor V of phi(varpi) = V * t^d; the constant coefficient
    doubles as the Hasse invariant."""

    module: DrinfeldModule
    poly: SkewPoly

    def as_isogeny(self) -> Isogeny:
        return Isogeny(self.module.frob_twist(self.module.place.d),
                       self.module, self.poly)

    @property
    def hasse(self):
        return self.poly.coefficient(0)


@dataclass(frozen=True)
class TorsionModule:
    module: DrinfeldModule
    depth: int
    points: tuple
    basis: tuple
    orders: dict
    complete: bool  # all geometric points are rational over the given field

    @property
    def count(self) -> int:
        return len(self.points)

    def invariant_factors(self) -> tuple[int, ...]:
        """Exponents (a, b) with the group isomorphic to
        A/varpi^a x A/varpi^b, a <= b (empty entries dropped)."""
        if self.count == 1:
            return ()
        qd = self.module.place.q ** self.module.place.d
        total = 0
        c = self.count
        while c > 1:
            c //= qd
            total += 1
        b = max(self.orders.values())
        a = total - b
        return tuple(x for x in (a, b) if x > 0)

    def is_cyclic(self) -> bool:
        inv = self.invariant_factors()
        return len(inv) <= 1


def _is_zero_like(x) -> bool:
    return x.is_zero() if hasattr(x, "is_zero") else not x


def _gamma_compatible_embedding(small: FieldExt, big: FieldExt):
    """An embedding of fields matching gamma_T on both sides (the canonical
    one composed with a power of Frobenius over the base)."""
    emb0 = big.field.embedding_from(small.field)
    qd = small.place.q
    # twist by Frobenius powers of the small field until gamma matches
    for e in range(small.field.n):
        def emb(x, _e=e):
            return emb0(x ** (small.field.p ** _e))
        if emb(small.gamma_T) == big.gamma_T:
            return emb
    raise ValueError("no gamma-compatible embedding")


def stable_order_qd_subgroups(E: DrinfeldModule) -> list[SubgroupScheme]:
    """All A-stable order-q^d subgroup schemes of the varpi-torsion of E,
    via exhaustive divisor enumeration; the structural expectation (two for
    ordinary modules, one for supersingular) is asserted by callers."""
    d = E.place.d
    divisors = stable_right_divisors(E.phi_T(), E.phi_eval(E.place.varpi), d)
    return [SubgroupScheme(E, u) for u in divisors]


def splitting_degree(u: SkewPoly, ext: FieldExt, cap: int = 64) -> int:
    """Least r with every root of the separable additive polynomial u
    rational over the degree-r extension of `ext`: certified by
    x^(Q^r) = x mod u(x) as ordinary polynomials, Q = |ext|."""
    if _is_zero_like(u.constant()):
        raise ValueError("u must be separable (nonzero constant coefficient)")
    # represent u as an ordinary polynomial over the big field
    coeffs = [ext.zero] * (ext.q ** u.degree + 1)
    for i, c in enumerate(u.coeffs):
        coeffs[ext.q ** i] = c

    def polymod(a, m):
        # both lists low-first over ext.field
        a = list(a)
        dm = len(m) - 1
        inv = m[-1].inverse()
        for k in range(len(a) - 1, dm - 1, -1):
            f = a[k] * inv
            if f.is_zero():
                continue
            for j in range(dm + 1):
                a[k - dm + j] = a[k - dm + j] - f * m[j]
        while len(a) > dm:
            a.pop()
        while a and a[-1].is_zero():
            a.pop()
        return a

    def polymul(a, b):
        out = [ext.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return out

    x = [ext.zero, ext.one]
    cur = list(x)
    Q = ext.size
    for r in range(1, cap + 1):
        # cur := cur^Q mod u by square-and-multiply
        result = [ext.one]
        base = list(cur)
        e = Q
        while e:
            if e & 1:
                result = polymod(polymul(result, base), coeffs)
            base = polymod(polymul(base, base), coeffs)
            e >>= 1
        cur = result
        if cur == x:
            return r
    raise RuntimeError("splitting degree exceeded the search cap")
