"""Hopf-algebra structure on G and on the Borel quotient B, the projection
pi, and machine verification of the axioms.

The coproduct is the matrix coproduct on T = [[a,b],[c,d]]; the bialgebra
checker is the arbiter that it preserves all relations.  The antipode is
not transcribed from anywhere: generator images are solved from the
convolution identity mu(S (x) id) Delta(g) = eps(g) 1 inside a finite
monomial ansatz, and uniqueness of the solution is part of the contract.
"""

from __future__ import annotations

import random

from . import linalg
from .ncalg import (AlgebraMap, DomainError, NCPoly, STD, normal_form_of_word,
                    random_word, star, tensor_elem)
from .scalars import ONE, QScalar, ZERO

__all__ = [
    "HopfAlgebra",
    "GroupLike",
    "hopf_G",
    "hopf_B",
    "pi_map",
    "chi",
    "is_group_like",
    "verify_hopf",
    "verify_pi_hopf_map",
]


class GroupLike:
    """A group-like element: Delta(g) = g (x) g and eps(g) = 1, verified."""

    def __init__(self, hopf: HopfAlgebra, element: NCPoly):
        if not is_group_like(hopf, element):
            raise DomainError(f"{element} is not group-like")
        self.hopf = hopf
        self.element = element

    def __repr__(self):
        return f"GroupLike({self.element})"


class HopfAlgebra:
    """An algebra of the standard family together with its Hopf data."""

    def __init__(self, alg, delta_images, counit_images, name,
                 antipode_ansatz_degree=2):
        self.alg = alg
        self.name = name
        self.T2 = STD.tensor(alg, alg)
        self.T3 = STD.tensor(alg, alg, alg)
        self.delta = AlgebraMap(alg, self.T2, delta_images, name=f"Delta[{name}]")
        self.counit_images = {g: QScalar.coerce(v)
                              for g, v in counit_images.items()}
        try:
            self.antipode_images, self.antipode_unique = self._solve_antipode(
                antipode_ansatz_degree)
        except (ValueError, DomainError) as exc:
            # a broken coproduct admits no antipode; callers report this
            self.antipode_images = None
            self.antipode_unique = False
            self.antipode_failure = str(exc)
        else:
            self.antipode_failure = None
        self._antipode_pow = {}

    # -- structure maps ---------------------------------------------------

    def coproduct(self, p: NCPoly) -> NCPoly:
        return self.delta(p)

    def counit(self, p: NCPoly) -> QScalar:
        total = ZERO
        for mono, c in p.terms.items():
            v = c
            for g, e in zip(self.alg.gens, mono):
                if not e:
                    continue
                base = self.counit_images[g]
                if e < 0:
                    if base.is_zero():
                        raise DomainError("counit of a non-invertible image")
                    v = v * base.inverse() ** (-e)
                else:
                    v = v * base ** e
                if v.is_zero():
                    break
            total = total + v
        return total

    def antipode(self, p: NCPoly) -> NCPoly:
        """Antihomomorphic extension of the solved generator images."""
        if p.alg is not self.alg:
            raise DomainError("antipode outside its Hopf algebra")
        if self.antipode_images is None:
            raise DomainError(f"no antipode: {self.antipode_failure}")
        out = self.alg.zero()
        for mono, c in p.terms.items():
            prod = self.alg.scalar(c)
            for i in range(self.alg.n - 1, -1, -1):
                e = mono[i]
                if e:
                    prod = prod * self._antipode_power(i, e)
            out = out + prod
        return out

    def _antipode_power(self, i, e):
        key = (i, e)
        hit = self._antipode_pow.get(key)
        if hit is None:
            hit = self.antipode_images[self.alg.gens[i]] ** e
            self._antipode_pow[key] = hit
        return hit

    # -- derived antipode ---------------------------------------------------

    def _solve_antipode(self, ansatz_degree):
        """Solve mu(S (x) id) Delta(g) = eps(g) 1 on generator legs.

        Unknowns are the S-images of every generator power occurring as a
        left Sweedler leg, each expanded over the monomial basis up to the
        ansatz degree.
        """
        alg = self.alg
        eqs = []
        for g in alg.gens:
            if g not in self.delta.images:
                continue
            eqs.append((g, self.delta(alg.gen(g)), self.counit_images[g]))
            i = alg.gen_index[g]
            if i in alg.invertible:
                # convolution identity for the inverse power pins its leg
                eqs.append((f"{g}^-1", self.delta(alg.gen(g, -1)),
                            self.counit_images[g].inverse()))
        ansatz = alg.basis_monomials(ansatz_degree)
        unknown_index = {}
        columns = []

        def leg_base(i, e):
            if (i, e) not in unknown_index:
                unknown_index[(i, e)] = len(columns)
                columns.extend({} for _ in ansatz)
            return unknown_index[(i, e)]

        for label, dp, _eps in eqs:
            for mono, c in dp.terms.items():
                lm, rm = self.T2.split_mono(mono)
                nz = [(i, e) for i, e in enumerate(lm) if e]
                if len(nz) > 1:
                    raise DomainError("coproduct legs must be generator powers")
                leg = nz[0] if nz else (0, 0)
                right = NCPoly(alg, {rm: c})
                base = leg_base(*leg)
                for k, m in enumerate(ansatz):
                    prod = NCPoly(alg, {m: ONE}) * right
                    col = columns[base + k]
                    for rmono, rc in prod.terms.items():
                        key = (label, rmono)
                        col[key] = col.get(key, ZERO) + rc
        target = {(label, alg._zero_mono): eps for label, _, eps in eqs}
        try:
            sol = linalg.solve_unique(columns, target)
            unique = True
        except ValueError as exc:
            if "underdetermined" in str(exc):
                sol = linalg.in_span(columns, target)
                unique = False
                if sol is None:
                    raise
            else:
                raise
        images = {}
        for (i, e), base in unknown_index.items():
            poly = alg.zero()
            for k, m in enumerate(ansatz):
                if sol[base + k]:
                    poly = poly + NCPoly(alg, {m: sol[base + k]})
            images[(i, e)] = poly
        # the generator images define S; inverse legs are consistency data
        gen_images = {}
        for (i, e), poly in images.items():
            if e == 1:
                gen_images[alg.gens[i]] = poly
        for (i, e), poly in images.items():
            if e != 1:
                expect = gen_images[alg.gens[i]] ** e
                if expect != poly:
                    raise DomainError(
                        "antipode solution inconsistent on inverse legs")
        return gen_images, unique


def _star_tensor(p: NCPoly) -> NCPoly:
    """(star (x) star) on a tensor power of G, factorwise."""
    talg = p.alg
    out = talg.zero()
    for mono, c in p.terms.items():
        parts = [star(NCPoly(f, {sub: ONE}))
                 for f, sub in zip(talg.factors, talg.split_mono(mono))]
        out = out + tensor_elem(talg, parts) * c
    return out


def _delta_slot(hopf: HopfAlgebra, p2: NCPoly, slot: int) -> NCPoly:
    """Apply the coproduct to one tensor slot of an element of T2."""
    out = hopf.T3.zero()
    T2 = hopf.T2
    for mono, c in p2.terms.items():
        m1, m2 = T2.split_mono(mono)
        if slot == 0:
            dp = hopf.delta(NCPoly(hopf.alg, {m1: ONE}))
            for dm, dc in dp.terms.items():
                x, y = T2.split_mono(dm)
                key = hopf.T3.join_monos([x, y, m2])
                out.terms[key] = out.terms.get(key, ZERO) + c * dc
        else:
            dp = hopf.delta(NCPoly(hopf.alg, {m2: ONE}))
            for dm, dc in dp.terms.items():
                x, y = T2.split_mono(dm)
                key = hopf.T3.join_monos([m1, x, y])
                out.terms[key] = out.terms.get(key, ZERO) + c * dc
    return NCPoly(hopf.T3, {m: c for m, c in out.terms.items() if c})


def _counit_slot(hopf: HopfAlgebra, p2: NCPoly, slot: int) -> NCPoly:
    """Contract one tensor slot of an element of T2 with the counit."""
    out = {}
    T2 = hopf.T2
    for mono, c in p2.terms.items():
        m1, m2 = T2.split_mono(mono)
        if slot == 0:
            v = hopf.counit(NCPoly(hopf.alg, {m1: ONE})) * c
            keep = m2
        else:
            v = hopf.counit(NCPoly(hopf.alg, {m2: ONE})) * c
            keep = m1
        if v:
            out[keep] = out.get(keep, ZERO) + v
    return NCPoly(hopf.alg, {m: c for m, c in out.items() if c})


def _convolve_antipode(hopf: HopfAlgebra, p: NCPoly, side: str) -> NCPoly:
    """mu(S (x) id) Delta(p) for side='left', mu(id (x) S) for 'right'."""
    dp = hopf.delta(p)
    out = hopf.alg.zero()
    for mono, c in dp.terms.items():
        m1, m2 = hopf.T2.split_mono(mono)
        p1 = NCPoly(hopf.alg, {m1: ONE})
        p2 = NCPoly(hopf.alg, {m2: ONE})
        if side == "left":
            out = out + hopf.antipode(p1) * p2 * c
        else:
            out = out + p1 * hopf.antipode(p2) * c
    return out


# ---------------------------------------------------------------------------
# the two standard Hopf algebras
# ---------------------------------------------------------------------------

def _build_G() -> HopfAlgebra:
    G = STD.G
    T2 = STD.tensor(G, G)

    def t(u, v):
        return tensor_elem(T2, [G.gen(u), G.gen(v)])

    delta_images = {
        "a": t("a", "a") + t("b", "c"),
        "b": t("a", "b") + t("b", "d"),
        "c": t("c", "a") + t("d", "c"),
        "d": t("c", "b") + t("d", "d"),
    }
    return HopfAlgebra(G, delta_images, {"a": 1, "b": 0, "c": 0, "d": 1}, "G")


_HOPF_G = _build_G()


def _build_pi() -> AlgebraMap:
    B = STD.B
    return AlgebraMap(STD.G, B, {
        "a": B.gen("lambda"),
        "b": B.zero(),
        "c": B.gen("xi"),
        "d": B.gen("lambda", -1),
    }, name="pi")


_PI = _build_pi()


def _build_B() -> HopfAlgebra:
    """Borel Hopf data derived by pushing the G-structure through pi."""
    G, B = STD.G, STD.B
    BB = STD.tensor(B, B)
    GG = _HOPF_G.T2

    def push(p2):
        out = BB.zero()
        for mono, c in p2.terms.items():
            m1, m2 = GG.split_mono(mono)
            part = tensor_elem(BB, [_PI(NCPoly(G, {m1: ONE})),
                                    _PI(NCPoly(G, {m2: ONE}))])
            out = out + part * c
        return out

    delta_images = {
        "lambda": push(_HOPF_G.delta(G.gen("a"))),
        "xi": push(_HOPF_G.delta(G.gen("c"))),
    }
    counit_images = {
        "lambda": _HOPF_G.counit(G.gen("a")),
        "xi": _HOPF_G.counit(G.gen("c")),
    }
    return HopfAlgebra(B, delta_images, counit_images, "B")


_HOPF_B = _build_B()


def hopf_G() -> HopfAlgebra:
    return _HOPF_G


def hopf_B() -> HopfAlgebra:
    return _HOPF_B


def pi_map() -> AlgebraMap:
    return _PI


def chi(n: int) -> GroupLike:
    """The group-like weight lambda^-n in B."""
    return GroupLike(_HOPF_B, STD.B.gen("lambda", -n))


def is_group_like(hopf: HopfAlgebra, p: NCPoly) -> bool:
    if p.is_zero():
        return False
    return (hopf.delta(p) == tensor_elem(hopf.T2, [p, p])
            and hopf.counit(p) == ONE)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def _sample_words(alg, degree, samples, seed):
    rng = random.Random(seed)
    out = [normal_form_of_word(alg, [(i, 1)]) for i in range(alg.n)]
    for _ in range(samples):
        out.append(normal_form_of_word(alg, random_word(alg, rng, degree)))
    return out


def verify_hopf(which: str, degree: int = 5, samples: int = 100,
                seed: int = 0, corrupt_delta: bool = False):
    """Check coassociativity, counit, antipode and star laws; returns the
    shared report-check list.  `corrupt_delta` installs a broken Delta(b)
    as a negative control."""
    hopf = {"G": _HOPF_G, "B": _HOPF_B}[which]
    if corrupt_delta:
        g = hopf.alg.gens[1]
        images = dict(hopf.delta.images)
        images[g] = images[g] + tensor_elem(hopf.T2,
                                            [hopf.alg.gen(g), hopf.alg.gen(g)])
        hopf = HopfAlgebra(hopf.alg, images, hopf.counit_images, hopf.name)
    checks = []
    words = _sample_words(hopf.alg, degree, samples, seed)

    def run(name, anchor, fn):
        witness = None
        for w in words:
            if not fn(w):
                witness = str(w)
                break
        checks.append({"name": name, "status": "fail" if witness else "pass",
                       "paper_anchor": anchor,
                       **({"witness": witness} if witness else {})})

    checks.append({
        "name": f"{which}.delta_algebra_map",
        "status": "pass" if not hopf.delta.check_relations() else "fail",
        "paper_anchor": "coproduct preserves the defining relations",
    })
    run(f"{which}.coassociativity",
        "(Delta x id)Delta = (id x Delta)Delta",
        lambda w: _delta_slot(hopf, hopf.delta(w), 0)
        == _delta_slot(hopf, hopf.delta(w), 1))
    run(f"{which}.counit_law",
        "(eps x id)Delta = id = (id x eps)Delta",
        lambda w: _counit_slot(hopf, hopf.delta(w), 0) == w
        and _counit_slot(hopf, hopf.delta(w), 1) == w)
    if hopf.antipode_images is None:
        checks.append({
            "name": f"{which}.antipode_convolution",
            "status": "fail",
            "witness": f"no antipode solution: {hopf.antipode_failure}",
            "paper_anchor": "mu(S x id)Delta = eta eps = mu(id x S)Delta",
        })
    else:
        run(f"{which}.antipode_convolution",
            "mu(S x id)Delta = eta eps = mu(id x S)Delta",
            lambda w: _convolve_antipode(hopf, w, "left") == hopf.alg.scalar(hopf.counit(w))
            and _convolve_antipode(hopf, w, "right") == hopf.alg.scalar(hopf.counit(w)))
    checks.append({
        "name": f"{which}.antipode_unique_in_ansatz",
        "status": "pass" if hopf.antipode_unique else "fail",
        "paper_anchor": "antipode derived by solving the convolution identity",
    })
    if hopf.alg.star_images is not None:
        run(f"{which}.star_coproduct",
            "Delta(a^*) = sum a_(1)^* x a_(2)^* (intended reading of Definition 3)",
            lambda w: hopf.delta(star(w)) == _star_tensor(hopf.delta(w)))
        run(f"{which}.star_counit",
            "eps(a^*) = conj(eps(a))",
            lambda w: hopf.counit(star(w)) == hopf.counit(w))
        if hopf.antipode_images is not None:
            run(f"{which}.star_antipode_compat",
                "S(S(a^*)^*) = a (standard Hopf-* compatibility)",
                lambda w: hopf.antipode(star(hopf.antipode(star(w)))) == w)
    else:
        checks.append({
            "name": f"{which}.star_axioms",
            "status": "skip",
            "witness": "no involution: the ideal (b) is not star-stable, "
                       "so no star descends to the Borel quotient",
            "paper_anchor": "Definition 3 (real form)",
        })
    return checks


def verify_pi_hopf_map(degree: int = 5):
    """pi is a Hopf-algebra map, checked on all basis monomials."""
    G, B = STD.G, STD.B
    BB = _HOPF_B.T2
    checks = []
    bad_delta = bad_counit = None
    for mono in G.basis_monomials(degree):
        p = NCPoly(G, {mono: ONE})
        lhs = _HOPF_B.delta(_PI(p))
        dp = _HOPF_G.delta(p)
        rhs = BB.zero()
        for m, c in dp.terms.items():
            m1, m2 = _HOPF_G.T2.split_mono(m)
            rhs = rhs + tensor_elem(BB, [_PI(NCPoly(G, {m1: ONE})),
                                         _PI(NCPoly(G, {m2: ONE}))]) * c
        if lhs != rhs and bad_delta is None:
            bad_delta = G.mono_str(mono)
        if _HOPF_B.counit(_PI(p)) != _HOPF_G.counit(p) and bad_counit is None:
            bad_counit = G.mono_str(mono)
    checks.append({"name": "pi.coproduct_compat",
                   "status": "fail" if bad_delta else "pass",
                   "paper_anchor": "Delta_B pi = (pi x pi) Delta_G",
                   **({"witness": bad_delta} if bad_delta else {})})
    checks.append({"name": "pi.counit_compat",
                   "status": "fail" if bad_counit else "pass",
                   "paper_anchor": "eps_B pi = eps_G",
                   **({"witness": bad_counit} if bad_counit else {})})
    bad_s = None
    for g in "abcd":
        if _HOPF_B.antipode(_PI(G.gen(g))) != _PI(_HOPF_G.antipode(G.gen(g))):
            bad_s = g
            break
    checks.append({"name": "pi.antipode_compat",
                   "status": "fail" if bad_s else "pass",
                   "paper_anchor": "S_B pi = pi S_G",
                   **({"witness": bad_s} if bad_s else {})})
    return checks
