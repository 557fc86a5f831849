"""The identity battery: every structural fact the library promises, as
named checks with stable identifiers, shared between the command line
`suite` and the test suite.

Check identifiers are stable strings; a failing check reports its
identifier so a red run maps to the violated identity.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .basearith import (APoly, artin_ring, ext_field, finite_field,
                        local_ring, make_place, poly_T, PrimePlace)
from .carlitz import (TruncSeriesRing, all_places, carlitz_coefficient_profile,
                      trace_of_carlitz_pullback)
from .hecke import (admissible_weight_values, apply_u_by_table, atkin_lehner,
                    build_correspondence, operator_matrix, support_valuations)
from .iwasawa import (J_ideal, determining_weights, duality_twist, filtration,
                      filtration_index_range, iota_eval, iwasawa_level,
                      maximal_ideal_kills_quotient, quotient_basis, specialize)
from .modules import DrinfeldModule, splitting_degree, stable_order_qd_subgroups
from .projector import (constant_tower, control_check, factorial_powers_vanish,
                        local_finiteness_report, mat_eq, mat_identity,
                        ordinary_projector, reduction_tower)
from .serretate import constant_lift, lift_independence_check


@dataclass
class CheckResult:
    check_id: str
    description: str
    passed: bool
    details: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return f"[{status}] {self.check_id}: {self.description}" + (
            f" ({self.details})" if self.details else "")


def _run(check_id: str, description: str, fn) -> CheckResult:
    t0 = time.time()
    try:
        details = fn() or ""
        return CheckResult(check_id, description, True, details,
                           time.time() - t0)
    except Exception as exc:  # noqa: BLE001 - report any violation
        return CheckResult(check_id, description, False,
                           f"{type(exc).__name__}: {exc}", time.time() - t0)


# ---------------------------------------------------------------------------
# individual checks
# ---------------------------------------------------------------------------

def check_carlitz_profile(place: PrimePlace) -> CheckResult:
    def body():
        prof = carlitz_coefficient_profile(place)
        assert prof.ok
        return f"deg {place.d}, {len(prof.middle)} middle coefficients"
    return _run("carlitz-linear-coefficient",
                f"action polynomial profile at {place}", body)


def check_carlitz_profile_sweep() -> CheckResult:
    def body():
        count = 0
        for q, e in ((2, 1), (3, 1), (2, 2)):
            f = finite_field(q ** e) if e == 1 else finite_field(q, e)
            for pl in all_places(f, 3):
                assert carlitz_coefficient_profile(pl).ok
                count += 1
        return f"{count} places, q in {{2,3,4}}, deg <= 3"
    return _run("carlitz-profile-sweep",
                "profile at every place of degree <= 3 over q in {2,3,4}",
                body)


def check_fv_factorization(place: PrimePlace, exhaustive_m: int = 1) -> CheckResult:
    def body():
        ext = ext_field(place, exhaustive_m)
        n = 0
        for g in ext.elements():
            for delta in ext.field.units():
                E = DrinfeldModule(ext, g, delta)
                F, V = E.frobenius_verschiebung()  # asserts vanishing + product
                n += 1
        return f"{n} modules over F_{ext.size}"
    return _run("fv-factorization",
                f"low twist coefficients of phi(varpi) vanish and V*F "
                f"re-multiplies, at {place}", body)


def check_torsion_dichotomy(place: PrimePlace) -> CheckResult:
    def body():
        ext = ext_field(place, 1)
        qd = place.q ** place.d
        checked = 0
        for g in ext.elements():
            for delta in ext.field.units():
                E = DrinfeldModule(ext, g, delta)
                subs = stable_order_qd_subgroups(E)
                if E.is_ordinary():
                    etale = [H for H in subs if H.kind.value == "etale"]
                    assert len(subs) == 2 and len(etale) == 1
                    u = etale[0].u
                    assert not u.constant().is_zero()  # separable: q^d roots
                    r = splitting_degree(u, ext)
                    if ext.size ** r <= 4096:
                        big = ext_field(place, ext.m * r)
                        tor = E.torsion_points(1, big)
                        assert tor.count == qd and tor.complete
                        assert tor.is_cyclic()
                else:
                    assert len(subs) == 1
                    pv = E.phi_eval(place.varpi)
                    assert pv.tau_valuation() == 2 * place.d
                    tor = E.torsion_points(1, ext)
                    assert tor.count == 1
                checked += 1
        return f"{checked} modules"
    return _run("torsion-dichotomy",
                f"q^d points iff ordinary, else only zero, at {place}", body)


def check_trace_divisibility(place: PrimePlace) -> CheckResult:
    def body():
        qd = place.q ** place.d
        R = artin_ring(place, 1, 2)
        S = TruncSeriesRing(R, qd * qd + 1)
        rep = trace_of_carlitz_pullback(place, S)
        assert rep.ok
        if place.q == 3 and place.d == 1:
            minus_two = R.embed_fq(place.field.from_int(-2))
            expect = S.from_coeff(R.eps * minus_two)
            assert rep.traces[2] == expect
        return f"rank {qd}, truncation {S.N}"
    return _run("pullback-trace-divisibility",
                f"basis traces of the X -> [varpi](X) pullback at {place}",
                body)


def check_serre_tate(place: PrimePlace, m: int = 2, nilpotency: int = 2) -> CheckResult:
    def body():
        ext = ext_field(place, m)
        E0 = DrinfeldModule(ext, ext.one, ext.one)
        if not E0.is_ordinary():
            E0 = DrinfeldModule(ext, ext.zero, ext.one)
        R = artin_ring(place, m, nilpotency)
        datum = constant_lift(E0, R, nilpotency - 1)
        rep = lift_independence_check(datum)
        assert rep.ok
        for v in rep.values.values():
            assert v.in_maximal_ideal()
        return (f"{rep.torsion_count} torsion points, "
                f"{rep.perturbations_checked} lift perturbations"
                + ("" if rep.exhaustive else " (sampled)"))
    return _run("deformation-lift-independence",
                f"deformation values independent of the lift at {place}", body)


def check_correspondence(place: PrimePlace, m: int) -> CheckResult:
    def body():
        corr = build_correspondence(place, m)  # asserts counts + structure
        qd = place.q ** place.d
        f_map = {}
        for p in corr.ordinary:
            e = corr.edges_from(p, "F")[0]
            assert e.dst.j == p.j ** qd
            f_map[p.j] = e.dst.j
        v_map = {p.j: corr.edges_from(p, "V")[0].dst.j for p in corr.ordinary}
        for j, j2 in f_map.items():
            assert v_map[j2] == j  # inverse permutations
        atkin_lehner(corr)
        U0 = operator_matrix(corr, 0, "U", locus="ordinary")
        F0 = operator_matrix(corr, 0, "F", locus="ordinary")
        assert mat_eq(U0.transpose().rows, F0.rows)
        kinds = {e.kind for e in corr.edges}
        assert kinds <= {"F", "V"}
        return (f"{len(corr.ordinary)} ordinary, "
                f"{len(corr.supersingular)} supersingular, "
                f"{len(corr.edges)} edges")
    return _run("correspondence-structure",
                f"edge structure, inverse permutations, involution at "
                f"{place}, m={m}", body)


def check_weight_homogeneity(place: PrimePlace, m: int,
                             weights=(-2, 0, 2, 3, 5), seed: int = 0) -> CheckResult:
    def body():
        corr = build_correspondence(place, m)
        rng = random.Random(seed)
        for k in weights:
            U = operator_matrix(corr, k, "U")
            for _ in range(3):
                vals = admissible_weight_values(corr, k, U.work_ext, rng)
                direct = apply_u_by_table(corr, k, vals, U.work_ext)
                got = U.apply([vals[p.j] for p in U.index])
                for i, p in enumerate(U.index):
                    assert got[i] == direct[p.j]
        return f"weights {list(weights)}"
    return _run("weight-homogeneity",
                f"operator respects weight-k homogeneity at {place}, m={m}",
                body)


def check_u_ordinarity(place: PrimePlace, m: int,
                       weights=(-2, 0, 2, 3, 5)) -> CheckResult:
    def body():
        corr = build_correspondence(place, m)
        for k in weights:
            U = operator_matrix(corr, k, "U")
            assert not U.determinant().is_zero()
        U0 = operator_matrix(corr, 0, "U")
        rep = ordinary_projector(constant_tower(U0.work_ext, U0.rows))
        assert rep.ok
        assert mat_eq(rep.projector.matrices[0],
                      mat_identity(U0.work_ext, U0.size))
        return f"invertible for k in {list(weights)}; projector is identity"
    return _run("u-ordinarity",
                f"etale-part operator invertible on the ordinary locus at "
                f"{place}, m={m}", body)


def check_hecke_support(place: PrimePlace, m: int) -> CheckResult:
    def body():
        corr = build_correspondence(place, m)
        f_edges = {id(e) for e in corr.edges if e.kind == "F"}
        v_edges = {id(e) for e in corr.edges if e.kind == "V"}
        assert not (f_edges & v_edges)
        vals = {k: support_valuations(k) for k in (-2, -1, 0, 1, 2, 3)}
        for k, v in vals.items():
            if k <= 0:
                assert v["F"] == 0 and v["V"] > 0
            if k >= 2:
                assert v["V"] == 0 and v["F"] > 0
        return "edge supports disjoint; normalization bookkeeping consistent"
    return _run("hecke-support",
                f"connected/etale parts have disjoint edge support at "
                f"{place}, m={m}", body)


def check_iwasawa_filtration(s_max: int = 4, r_max: int = 12) -> CheckResult:
    def body():
        basis = quotient_basis(J_ideal(3, 2), J_ideal(3, 3))
        assert len(basis) == 11
        for s in range(1, s_max + 1):
            top = min(r_max, filtration_index_range(s) - 1)
            for r in range(top + 1):
                I, J = filtration(s, r), filtration(s, r + 1)
                assert I.contains_ideal(J)
                assert maximal_ideal_kills_quotient(I, J)
        return f"chain indices r <= {r_max}, generators s <= {s_max}; " \
               "corner quotient basis has 11 monomials"
    return _run("iwasawa-filtration",
                "decreasing ideal chain with quotients killed by the "
                "maximal ideal", body)


def check_iwasawa_specialization(place: PrimePlace, m_max: int = 3,
                                 seed: int = 0) -> CheckResult:
    def body():
        rng = random.Random(seed)
        total = 0
        for m in range(1, m_max + 1):
            lv = iwasawa_level(place, m)
            for _ in range(100 // m_max):
                x = lv.random_element(rng)
                for k in range(-3, 7):
                    assert specialize(x, k) == iota_eval(x, k)
                    total += 1
        return f"{total} weight evaluations agree along both routes"
    return _run("iwasawa-specialization",
                f"component specialization equals full-expansion evaluation "
                f"at {place}", body)


def check_determining_weights(place: PrimePlace, m_max: int = 3) -> CheckResult:
    def body():
        ranks = []
        for m in range(1, m_max + 1):
            ds = determining_weights(place, m)
            assert ds.ok
            ranks.append((m, len(ds.weights), ds.rank))
        return "; ".join(f"level {m}: |K|={k}, rank {r}" for m, k, r in ranks)
    return _run("iwasawa-determining-weights",
                f"finite weight sets with saturated evaluation rank at "
                f"{place}", body)


def check_duality_twist(place: PrimePlace, m: int = 2, seed: int = 0) -> CheckResult:
    def body():
        lv = iwasawa_level(place, m)
        rng = random.Random(seed)
        for _ in range(50):
            x = lv.random_element(rng)
            assert duality_twist(duality_twist(x)) == x
            for k in (-2, 0, 1, 2, 3, 5):
                assert specialize(duality_twist(x), k) == specialize(x, 2 - k)
        return "involution and weight swap k -> 2-k on 50 random elements"
    return _run("duality-weight-swap",
                f"twist is an involution exchanging weights k and 2-k at "
                f"{place}", body)


def check_projector_worked_example(place: PrimePlace) -> CheckResult:
    def body():
        L2 = local_ring(place, 2)
        M = [[L2.one, L2.one], [L2.zero, L2.varpi]]
        op = reduction_tower(place, M, 2)
        rep = ordinary_projector(op)
        assert rep.ok
        expected = [[L2.one, L2.one + L2.varpi], [L2.zero, L2.zero]]
        assert mat_eq(rep.projector.matrices[-1], expected)
        assert factorial_powers_vanish(op, rep)
        lf = local_finiteness_report(op)
        assert all(level["stable"] for level in lf)
        return f"stabilized at steps {rep.steps}"
    return _run("projector-worked-example",
                f"2x2 projector over the depth-2 truncation at {place}", body)


def check_projector_hecke_towers(place: PrimePlace, m: int) -> CheckResult:
    def body():
        corr = build_correspondence(place, m)
        count = 0
        for which in ("F", "U", "T"):
            M = operator_matrix(corr, 0, which)
            rep = ordinary_projector(constant_tower(M.work_ext, M.rows))
            assert rep.ok
            count += 1
            if _residue_entries(M):
                lifted = _teichmuller_lift(M, place, depth=2)
                rep2 = ordinary_projector(lifted)
                assert rep2.ok
                count += 1
        for k in (-2, 2, 3, 5):
            M = operator_matrix(corr, k, "U")
            rep = ordinary_projector(constant_tower(M.work_ext, M.rows))
            assert rep.ok
            count += 1
        return f"{count} towers"
    return _run("projector-hecke-towers",
                f"projector properties on correspondence operators at "
                f"{place}, m={m}", body)


def _residue_entries(M) -> bool:
    qd = M.work_ext.q ** M.work_ext.place.d
    return all((x ** qd) == x for row in M.rows for x in row)


def _teichmuller_lift(M, place: PrimePlace, depth: int):
    ring = local_ring(place, depth)
    ext = M.work_ext
    rows = [[ring.teichmuller(
        local_ring(place, depth).from_apoly(ext.to_residue(x).value))
        for x in row] for row in M.rows]
    return reduction_tower(place, rows, depth)


def check_projector_random(place: PrimePlace, count: int = 100,
                           seed: int = 0) -> CheckResult:
    def body():
        rng = random.Random(seed)
        L2 = local_ring(place, 2)
        field = place.field
        elems = [L2.from_apoly(APoly(field, [a, b]))
                 for a in field.elements() for b in field.elements()]
        for _ in range(count):
            M = [[elems[rng.randrange(len(elems))] for _ in range(4)]
                 for _ in range(4)]
            rep = ordinary_projector(reduction_tower(place, M, 2))
            assert rep.ok
        return f"{count} random 4x4 depth-2 towers"
    return _run("projector-random-towers",
                f"projector properties on random towers at {place}", body)


def check_projector_control(place: PrimePlace, m: int = 2,
                            seed: int = 0) -> CheckResult:
    def body():
        lv = iwasawa_level(place, m)
        rng = random.Random(seed)
        cases = 0
        T = poly_T(place.field) if place.field.n == 1 else None
        for trial in range(6):
            n = 2 + trial % 2
            M = [[lv.random_element(rng, support=2) for _ in range(n)]
                 for _ in range(n)]
            for k in (0, 2, 3):
                cr = control_check(M, lv, lambda x, kk=k: specialize(x, kk),
                                   lv.ring)
                assert cr.ok
                cases += 1
        # the worked rank-one case: unit on the diagonal against varpi
        u = sorted(lv.wild_group, key=lambda x: 0)[min(1, len(lv.wild_group) - 1)]
        M = [[lv.one, lv.one], [lv.zero, lv.dirac(u) * lv.ring.varpi]]
        for k in (0, 2, 5):
            cr = control_check(M, lv, lambda x, kk=k: specialize(x, kk), lv.ring)
            assert cr.ok
            cases += 1
        return f"{cases} base-change comparisons"
    return _run("projector-control",
                f"base change of the idempotent commutes with weight "
                f"specialization at {place}", body)


# ---------------------------------------------------------------------------
# the suite
# ---------------------------------------------------------------------------

def standard_places():
    F3 = finite_field(3)
    F2 = finite_field(2)
    return (make_place(poly_T(F3)),
            make_place(poly_T(F2) ** 2 + poly_T(F2) + 1))


def suite_checks(place: PrimePlace, m: int) -> list:
    """The full battery at one configuration."""
    out = [
        check_carlitz_profile(place),
        check_fv_factorization(place),
        check_torsion_dichotomy(place),
        check_trace_divisibility(place),
        check_serre_tate(place, m=min(m, 2)),
        check_correspondence(place, m),
        check_weight_homogeneity(place, m),
        check_u_ordinarity(place, m),
        check_hecke_support(place, m),
        check_iwasawa_filtration(),
        check_iwasawa_specialization(place, m_max=min(m + 1, 3)),
        check_determining_weights(place, m_max=min(m + 1, 3)),
        check_duality_twist(place, m=min(m, 2)),
        check_projector_worked_example(place),
        check_projector_hecke_towers(place, m),
        check_projector_random(place, count=25),
        check_projector_control(place, m=min(m, 2)),
    ]
    return out
