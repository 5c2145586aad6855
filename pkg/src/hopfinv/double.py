"""Drinfeld double construction and small group algebras.

The double D(H) is realized on H^* (x) H with Radford's convention:

    (f >< h)(f' >< h') = f (h_(1) -> f' <- S^-1(h_(3))) >< h_(2) h'
    Delta(f >< h)      = (f_(2) >< h_(1)) (x) (f_(1) >< h_(2))
    S(f >< h)          = (eps >< S(h)) (f o S^-1 >< 1)

with (h -> f)(x) = f(xh) and (f <- h)(x) = f(hx), and the canonical R-matrix
R = sum_i (eps >< e_i) (x) (e^i >< 1).  The convention is validated behaviorally:
`verify_axioms` must pass (including quasitriangularity) on every constructed
double.

Also here: the ribbon-existence criterion for D(H), which asks for grouplike
l in H and a character beta of H with l^2 = g, beta^2 = alpha (convolution)
and S^2(h) = l ((beta^-1 (x) id (x) beta) Delta^2(h)) l^-1 for all h.
"""

from __future__ import annotations

from dataclasses import dataclass

from hopfinv.hopf import (
    Element,
    Functional,
    HopfAlgebra,
    TensorElement,
    _acc,
    _prune,
    antipode_power,
    counit_of,
    iterated_coproduct,
    tensor_of,
)
from hopfinv.scalars import Cyc, root_of_unity


def group_algebra(n: int, l: int) -> HopfAlgebra:
    """The group algebra of Z/n over Q(zeta_l): basis g^0..g^(n-1)."""
    one = Cyc.one(l)
    mult = {(i, j): {(i + j) % n: one} for i in range(n) for j in range(n)}
    coprod = {i: {(i, i): one} for i in range(n)}
    antipode = {i: {(-i) % n: one} for i in range(n)}
    labels = ["1"] + [f"g^{i}" if i > 1 else "g" for i in range(1, n)]
    return HopfAlgebra(
        l=l,
        dim=n,
        labels=labels,
        mult=mult,
        coproduct=coprod,
        antipode=antipode,
        unit={0: one},
        counit=tuple(one for _ in range(n)),
        antipode_inv=antipode,
        name=f"C[Z/{n}]",
    )


def taft_algebra(n: int, l: int) -> HopfAlgebra:
    """The Taft Hopf algebra of dimension n^2 over Q(zeta_l).

    Generated by a grouplike K with K^n = 1 and a skew-primitive E with
    E^n = 0, KE = w EK for a primitive n-th root of unity w in the field,
    Delta(E) = 1 (x) E + E (x) K, S(E) = -E K^-1, S(K) = K^-1.  T_2 is
    Sweedler's 4-dimensional Hopf algebra.  Requires w in Q(zeta_l):
    n = 2 uses w = -1, otherwise n must divide l.
    """
    if n == 2:
        w = -Cyc.one(l)
    elif l % n == 0:
        w = root_of_unity(l, l // n)
    else:
        raise ValueError(f"no primitive {n}-th root of unity in Q(zeta_{l})")
    one = Cyc.one(l)
    zero = Cyc.zero(l)
    dim = n * n

    def idx(a: int, j: int) -> int:
        return a * n + j

    mult: dict[tuple[int, int], dict[int, Cyc]] = {}
    for a1 in range(n):
        for j1 in range(n):
            for a2 in range(n):
                for j2 in range(n):
                    if a1 + a2 >= n:
                        mult[(idx(a1, j1), idx(a2, j2))] = {}
                    else:
                        mult[(idx(a1, j1), idx(a2, j2))] = {
                            idx(a1 + a2, (j1 + j2) % n): w ** (j1 * a2)
                        }

    # Delta(E^a K^j) = (1 (x) E + E (x) K)^a (K^j (x) K^j); the two summands
    # w-commute, expanded by repeated multiplication.  Keys track the exponents
    # (E-left, E-right, K-right); the K-left exponent always equals E-left's
    # partner j and is attached at the end.
    powers = [{(0, 0, 0): one}]
    for _ in range(n - 1):
        nxt: dict[tuple[int, int, int], Cyc] = {}
        for (x, y, z), c in powers[-1].items():
            # * (1 (x) E): right leg E^y K^z * E = w^z E^(y+1) K^z
            if y + 1 <= n - 1:
                _acc(nxt, (x, y + 1, z), c * w**z)
            # * (E (x) K)
            if x + 1 <= n - 1:
                _acc(nxt, (x + 1, y, z + 1), c)
        powers.append(nxt)
    coprod: dict[int, dict[tuple[int, int], Cyc]] = {}
    for j in range(n):
        for a in range(n):
            table: dict[tuple[int, int], Cyc] = {}
            for (x, y, z), c in powers[a].items():
                _acc(table, (idx(x, j), idx(y, (z + j) % n)), c)
            coprod[idx(a, j)] = table

    antipode: dict[int, dict[int, Cyc]] = {}
    for a in range(n):
        for j in range(n):
            sgn = one if a % 2 == 0 else -one
            coeff = sgn * w ** (-(a * (a - 1) // 2) - j * a)
            antipode[idx(a, j)] = {idx(a, (-a - j) % n): coeff}

    labels = []
    for a in range(n):
        for j in range(n):
            e = "" if a == 0 else ("E" if a == 1 else f"E^{a}")
            k = "" if j == 0 else ("K" if j == 1 else f"K^{j}")
            labels.append((e + (" " if e and k else "") + k) or "1")
    counit = tuple(one if a == 0 else zero for a in range(n) for _ in range(n))
    return HopfAlgebra(
        l=l,
        dim=dim,
        labels=labels,
        mult=mult,
        coproduct=coprod,
        antipode=antipode,
        unit={0: one},
        counit=counit,
        name=f"T_{n}",
    )


def drinfeld_double(H: HopfAlgebra) -> tuple[HopfAlgebra, TensorElement]:
    """Construct D(H) on basis e^i (x) e_j together with its canonical R-matrix."""
    n = H.dim
    dim = n * n
    l = H.l
    one = Cyc.one(l)

    def pair_index(i: int, j: int) -> int:
        return i * n + j

    # dual-side structure constants from H's tables
    #   e^i e^j = sum_a Delta(e_a)[i,j] e^a          (product in H^*)
    #   Delta_{H^*}(e^i) = sum_{a,b} m(e_a e_b)[i] e^a (x) e^b
    dual_mult: dict[tuple[int, int], dict[int, Cyc]] = {}
    for a in range(n):
        for (i, j), c in H.coprod_basis(a).items():
            _acc(dual_mult.setdefault((i, j), {}), a, c)
    dual_coprod: dict[int, dict[tuple[int, int], Cyc]] = {}
    for a in range(n):
        for b in range(n):
            for i, c in H.mult_basis(a, b).items():
                _acc(dual_coprod.setdefault(i, {}), (a, b), c)
    dual_unit = {i: H.counit[i] for i in range(n) if not H.counit[i].is_zero()}

    def hstar_mult(f: dict[int, Cyc], g: dict[int, Cyc]) -> dict[int, Cyc]:
        out: dict[int, Cyc] = {}
        for i, ci in f.items():
            for j, cj in g.items():
                table = dual_mult.get((i, j))
                if table:
                    c = ci * cj
                    for a, ca in table.items():
                        _acc(out, a, c * ca)
        return _prune(out)

    def sandwich_functional(i2: int, a1: int, a3: int) -> dict[int, Cyc]:
        """The functional x |-> e^{i2}(S^-1(e_{a3}) x e_{a1}) in the dual basis."""
        w = H.antipode_inv_basis(a3)
        out: dict[int, Cyc] = {}
        for b in range(n):
            acc = H.zero
            for wk, cw in w.items():
                for m1, cm1 in H.mult_basis(wk, b).items():
                    for m2, cm2 in H.mult_basis(m1, a1).items():
                        if m2 == i2:
                            acc = acc + cw * cm1 * cm2
            if not acc.is_zero():
                out[b] = acc
        return out

    def mult(pq: int, rs: int) -> dict[int, Cyc]:
        i1, j1 = divmod(pq, n)
        i2, j2 = divmod(rs, n)
        out: dict[int, Cyc] = {}
        d2 = iterated_coproduct(H.basis_element(j1), 3)
        f1 = {i1: one}
        for (a1, a2, a3), c in d2.terms.items():
            mid = sandwich_functional(i2, a1, a3)
            if not mid:
                continue
            fpart = hstar_mult(f1, mid)
            if not fpart:
                continue
            for hk, ch in H.mult_basis(a2, j2).items():
                for fk, cf in fpart.items():
                    _acc(out, pair_index(fk, hk), c * ch * cf)
        return _prune(out)

    def coprod(pq: int) -> dict[tuple[int, int], Cyc]:
        i, j = divmod(pq, n)
        out: dict[tuple[int, int], Cyc] = {}
        dual = dual_coprod.get(i, {})
        hcop = H.coprod_basis(j)
        for (a, b), cf in dual.items():
            for (h1, h2), ch in hcop.items():
                # H^{* cop}: the second dual leg comes first
                _acc(out, (pair_index(b, h1), pair_index(a, h2)), cf * ch)
        return _prune(out)

    zero = Cyc.zero(l)
    counit = tuple(
        H.unit.get(i, zero) * H.counit[j] for i in range(n) for j in range(n)
    )
    unit = {pair_index(i, u): c * cu for i, c in dual_unit.items() for u, cu in H.unit.items()}

    mult_cache: dict[tuple[int, int], dict[int, Cyc]] = {}

    def mult_memo(a: int, b: int) -> dict[int, Cyc]:
        key = (a, b)
        hit = mult_cache.get(key)
        if hit is None:
            hit = mult(*key)
            mult_cache[key] = hit
        return hit

    def antipode(pq: int) -> dict[int, Cyc]:
        i, j = divmod(pq, n)
        # (eps >< S(e_j)) * (e^i o S^-1 >< 1), multiplied in D(H)
        left: dict[int, Cyc] = {}
        for sj, cj in H.antipode_basis(j).items():
            for u, cu in dual_unit.items():
                _acc(left, pair_index(u, sj), cj * cu)
        right: dict[int, Cyc] = {}
        for b in range(n):
            for k, ck in H.antipode_inv_basis(b).items():
                if k == i:
                    for u, cu in H.unit.items():
                        _acc(right, pair_index(b, u), ck * cu)
        out: dict[int, Cyc] = {}
        for x, cx in left.items():
            for y, cy in right.items():
                c = cx * cy
                for z, cz in mult_memo(x, y).items():
                    _acc(out, z, c * cz)
        return _prune(out)

    labels = [f"{H.labels[i]}^* >< {H.labels[j]}" for i in range(n) for j in range(n)]
    D = HopfAlgebra(
        l=l,
        dim=dim,
        labels=labels,
        mult=mult_memo,
        coproduct=coprod,
        antipode=antipode,
        unit=unit,
        counit=counit,
        name=f"D({H.name})",
    )
    R = TensorElement(
        D,
        2,
        {
            (pair_index(u, k), pair_index(k, w)): cu * cw
            for k in range(n)
            for u, cu in dual_unit.items()
            for w, cw in H.unit.items()
        },
    )
    return D, R


# -- grouplikes, characters, and the ribbon criterion ---------------------------


def grouplike_elements(A: HopfAlgebra) -> list[Element]:
    """Basis-supported grouplike elements (Delta x = x (x) x, eps(x) = 1).

    Complete for pointed bases like group algebras; general grouplikes with
    larger support are out of scope at this scale.
    """
    out = []
    for b in range(A.dim):
        cop = A.coprod_basis(b)
        if list(cop.keys()) != [(b, b)]:
            continue
        k = cop[(b, b)]
        eps = A.counit[b]
        if eps.is_zero():
            continue
        # x = c e_b with Delta x = x(x)x and eps(x)=1 forces c = 1/eps and k*c = c^2
        c = eps.inverse()
        if k * c == c * c:
            out.append(A.basis_element(b).scale(c))
    return out


def algebra_characters(A: HopfAlgebra) -> list[Functional]:
    """All algebra characters of A for monomial multiplication tables whose
    non-nilpotent part is generated by a single basis element.

    This covers cyclic group algebras and Taft algebras: characters kill every
    nilpotent basis monomial and take root-of-unity values {+-zeta^k} on the
    rest.  Every candidate is verified against the full multiplication table,
    so the structural shortcuts cannot produce a wrong answer.
    """
    n = A.dim
    unit_items = list(A.unit.items())
    if len(unit_items) != 1 or unit_items[0][1] != A.one:
        raise NotImplementedError("character enumeration needs a monomial unit")
    unit_idx = unit_items[0][0]

    def monomial(table: dict[int, Cyc]) -> tuple[int, Cyc] | None:
        if len(table) > 1:
            return None
        if not table:
            return (-1, A.zero)  # zero product
        k, c = next(iter(table.items()))
        return k, c

    # classify basis elements by their power orbit: unit-returning or nilpotent
    nilpotent: set[int] = set()
    cyclic: set[int] = {unit_idx}
    for b in range(n):
        if b == unit_idx:
            continue
        cur, steps = b, 0
        seen = {b}
        while True:
            m = monomial(A.mult_basis(b, cur))
            if m is None:
                raise NotImplementedError("non-monomial multiplication; desk-scale scope")
            cur, _ = m
            steps += 1
            if cur == -1:
                nilpotent.add(b)
                break
            if cur == unit_idx:
                cyclic.add(b)
                break
            if cur in seen or steps > n:
                nilpotent.add(b)  # never returns to the unit: characters vanish
                break
            seen.add(cur)

    for gen in sorted(cyclic - {unit_idx}) or [unit_idx]:
        # walk powers of the generator: gen^k = coeff_k * e_{idx_k}
        orbit: list[tuple[int, Cyc]] = [(unit_idx, A.one)]
        cur, cc = gen, A.one
        order = None
        rel = A.one
        for _ in range(1, n + 2):
            if cur == unit_idx:
                order = len(orbit)
                rel = cc  # gen^order = rel * 1
                break
            if any(cur == i for i, _ in orbit):
                break
            orbit.append((cur, cc))
            m = monomial(A.mult_basis(gen, cur))
            if m is None or m[0] == -1:
                break
            cur, c2 = m
            cc = cc * c2
        if order is None or {i for i, _ in orbit} != cyclic:
            continue
        # chi(gen)^order = rel; enumerate t among the roots of unity of the field
        l = A.l
        candidates = []
        for s in (1, -1):
            for k in range(l):
                t = root_of_unity(l, k) if s == 1 else -root_of_unity(l, k)
                if t**order == rel:
                    candidates.append(t)
        chars = []
        for t in dict.fromkeys(candidates):
            vals = [A.zero] * n
            tm = A.one
            for idx_k, coeff_k in orbit:
                vals[idx_k] = tm * coeff_k.inverse()
                tm = tm * t
            f = Functional(A, tuple(vals))
            if _is_character(A, f):
                chars.append(f)
        if chars:
            return chars
    raise NotImplementedError("no single basis generator found; desk-scale scope")


def _is_character(A: HopfAlgebra, f: Functional) -> bool:
    for a in range(A.dim):
        for b in range(A.dim):
            acc = A.zero
            for k, c in A.mult_basis(a, b).items():
                acc = acc + c * f.values[k]
            if acc != f.values[a] * f.values[b]:
                return False
    return f.apply_terms(A.unit) == A.one


@dataclass
class RibbonCriterionResult:
    has_ribbon: bool
    witness_l: Element | None
    witness_beta: Functional | None
    candidates_checked: int


def double_ribbon_criterion(H: HopfAlgebra, g: Element, alpha: Functional) -> RibbonCriterionResult:
    """Check whether D(H) admits a ribbon element.

    Scans grouplike l in H with l^2 = g and characters beta of H with
    beta*beta = alpha (convolution), testing
    S^2(h) = l ((beta^-1 (x) id (x) beta) Delta^2(h)) l^-1 on every basis h.
    """
    from hopfinv.hopf import invert_element

    checked = 0
    grouplikes = grouplike_elements(H)
    characters = algebra_characters(H)
    for lc in grouplikes:
        if lc * lc != g:
            continue
        lc_inv = invert_element(lc)
        for beta in characters:
            if beta.convolve(beta) != alpha:
                continue
            checked += 1
            beta_inv = beta.compose_antipode()
            ok = True
            for b in range(H.dim):
                x = H.basis_element(b)
                t3 = iterated_coproduct(x, 3)
                mid = t3.contract_functional(2, beta)
                mid = mid.contract_functional(0, beta_inv)
                if lc * mid * lc_inv != antipode_power(x, 2):
                    ok = False
                    break
            if ok:
                return RibbonCriterionResult(True, lc, beta, checked)
    return RibbonCriterionResult(False, None, None, checked)
