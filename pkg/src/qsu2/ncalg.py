"""Noncommutative polynomial arithmetic with canonical normal forms.

Covers the quantum SL(2) function algebra G (generators a,b,c,d), its Ore
localizations G_b, G_d, G_bd, the lower Borel quotient B (lambda, xi), the
Manin plane M (x, y), and tensor products of these.

Monomials are exponent vectors over the ordered generators.  All generator
pairs q-commute except (a, d); those are eliminated so that no canonical
monomial contains both a and a d-power:

  * in G and G_b the rules  a d -> 1 + q b c  and  d a -> 1 + q^-1 b c
    realize the PBW basis {a^k b^r c^s} u {b^r c^s d^t};
  * in G_d and G_bd the generator a itself reduces,
    a -> d^-1 + q b c d^-1, so the basis is {b^r c^s d^t} with t ranging
    over the integers (a and d^-1 cannot coexist in a basis).

Rewriting terminates: swaps strictly reduce inversion count, the a-d rules
strictly reduce the number of a-d pairs, and a-elimination reduces the
a-count, none of which any other rule increases.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .scalars import ONE, Q, QScalar, ZERO, q_pow

__all__ = [
    "Algebra",
    "NCPoly",
    "AlgebraMap",
    "DomainError",
    "STD",
    "star",
    "retract",
    "tensor_elem",
    "apply_tensor_map",
    "filtration_degree",
    "normal_form_of_word",
    "confluence_probe",
    "random_word",
    "parse_element",
]


class DomainError(ValueError):
    """An operation was applied outside its declared domain."""


# ---------------------------------------------------------------------------
# algebras
# ---------------------------------------------------------------------------

class Algebra:
    """A presentation with q-power swap rules and optional a-d eliminations.

    `comm[(i, j)]` for i < j is the integer e in  g_j g_i = q^e g_i g_j.
    The pair `ad_pair` (always (first, last)) carries the inhomogeneous
    rules instead; `elim_gen` maps a generator index to its expansion.
    """

    def __init__(self, name, gens, invertible=(), comm=None, ad_pair=None,
                 elim_gen=None, factors=None):
        self.name = name
        self.gens = tuple(gens)
        self.n = len(self.gens)
        self.gen_index = {g: i for i, g in enumerate(self.gens)}
        self.invertible = frozenset(self.gen_index[g] for g in invertible)
        self.comm = dict(comm or {})
        self.ad_pair = ad_pair
        self.elim_gen = {}  # index -> tuple of (QScalar, mono)
        self.factors = tuple(factors) if factors else None
        self.star_images = None  # set on G by the standard container
        self.relation_words = []  # list of (name, lhs_terms, rhs_terms)
        self._zero_mono = (0,) * self.n
        self._da_cache = {}
        self._elim_pow_cache = {}
        if factors:
            off = []
            k = 0
            for f in factors:
                off.append(k)
                k += f.n
            self._offsets = tuple(off)
        if elim_gen:
            for g, terms in elim_gen.items():
                self.elim_gen[self.gen_index[g]] = tuple(
                    (QScalar.coerce(c), tuple(m)) for c, m in terms)

    def __repr__(self):
        return f"<Algebra {self.name}>"

    # -- monomial helpers ----------------------------------------------

    def mono_degree(self, mono) -> int:
        return sum(abs(e) for e in mono)

    def check_mono(self, mono):
        if len(mono) != self.n:
            raise DomainError(f"{self.name}: bad monomial length")
        for i, e in enumerate(mono):
            if e < 0 and i not in self.invertible:
                raise DomainError(
                    f"{self.name}: negative exponent on non-invertible "
                    f"generator {self.gens[i]}")
        if self.factors:
            for f, sub in zip(self.factors, self.split_mono(mono)):
                f.check_mono(sub)
            return
        for i in self.elim_gen:
            if mono[i] != 0:
                raise DomainError(
                    f"{self.name}: generator {self.gens[i]} is not a basis "
                    f"generator here")
        if self.ad_pair:
            ia, id_ = self.ad_pair
            if mono[ia] > 0 and mono[id_] != 0:
                raise DomainError(
                    f"{self.name}: {self.gens[ia]} and {self.gens[id_]} may "
                    f"not co-occur")

    def split_mono(self, mono):
        assert self.factors
        out = []
        for f, off in zip(self.factors, self._offsets):
            out.append(tuple(mono[off:off + f.n]))
        return tuple(out)

    def join_monos(self, subs):
        assert self.factors
        return tuple(itertools.chain.from_iterable(subs))

    def mono_str(self, mono) -> str:
        if self.factors:
            return " (x) ".join(
                f.mono_str(s) for f, s in zip(self.factors, self.split_mono(mono)))
        parts = []
        for g, e in zip(self.gens, mono):
            if e == 1:
                parts.append(g)
            elif e:
                parts.append(f"{g}^{e}")
        return " ".join(parts) if parts else "1"

    # -- element constructors -------------------------------------------

    def zero(self) -> NCPoly:
        return NCPoly(self, {})

    def one(self) -> NCPoly:
        return NCPoly(self, {self._zero_mono: ONE})

    def scalar(self, c) -> NCPoly:
        c = QScalar.coerce(c)
        return NCPoly(self, {self._zero_mono: c} if c else {})

    def gen(self, name: str, e: int = 1) -> NCPoly:
        i = self.gen_index[name]
        if e == 0:
            return self.one()
        if self.factors:
            # locate the factor owning this slot and lift canonically
            off = 0
            for k, f in enumerate(self.factors):
                if i < off + f.n:
                    parts = [g.one() for g in self.factors]
                    parts[k] = f.gen(f.gens[i - off], e)
                    return tensor_elem(self, parts)
                off += f.n
        if e < 0 and i not in self.invertible:
            raise DomainError(f"{self.name}: {name} is not invertible")
        if i in self.elim_gen:
            img = NCPoly(self, dict(self._elim_power(i, 1)))
            return img if e == 1 else img ** e
        mono = list(self._zero_mono)
        mono[i] = e
        return NCPoly(self, {tuple(mono): ONE})

    def element(self, terms) -> NCPoly:
        out = {}
        for mono, c in terms.items():
            mono = tuple(mono)
            self.check_mono(mono)
            c = QScalar.coerce(c)
            if c:
                out[mono] = out.get(mono, ZERO) + c
        return NCPoly(self, {m: c for m, c in out.items() if c})

    # -- canonical-monomial multiplication -------------------------------

    def _merge(self, m1, m2):
        """q-exponent and merged exponents for m1*m2 with no a-d crossing."""
        e = 0
        for j in range(self.n):
            y = m2[j]
            if not y:
                continue
            for i in range(j + 1, self.n):
                x = m1[i]
                if x:
                    c = self.comm.get((j, i))
                    if c is None:
                        raise AssertionError(
                            f"{self.name}: illegal crossing "
                            f"{self.gens[i]}/{self.gens[j]}")
                    if c:
                        e += x * y * c
        return e, tuple(a + b for a, b in zip(m1, m2))

    def _da_expand(self, t: int, k: int):
        """Normal form of d^t a^k in G-type algebras (t, k >= 1)."""
        key = (t, k)
        hit = self._da_cache.get(key)
        if hit is not None:
            return hit
        ia, id_ = self.ad_pair
        ib, ic = ia + 1, ia + 2
        if t == 0 or k == 0:
            mono = list(self._zero_mono)
            mono[ia], mono[id_] = k, t
            out = {tuple(mono): ONE}
        else:
            out = {}
            prev = self._da_expand(t - 1, k - 1)
            for mono, c in prev.items():
                out[mono] = out.get(mono, ZERO) + c
            # d^(t-1) (q^-1 b c) a^(k-1): move bc right past a^(k-1), then
            # each prev term picks up bc moved left past its d-power
            base = q_pow(-1 - 2 * (k - 1))
            for mono, c in prev.items():
                m = list(mono)
                coeff = c * base * q_pow(-2 * m[id_])
                m[ib] += 1
                m[ic] += 1
                m = tuple(m)
                out[m] = out.get(m, ZERO) + coeff
            out = {m: c for m, c in out.items() if c}
        self._da_cache[key] = out
        return out

    def _reduce_ordered(self, mono, coeff, acc):
        """Eliminate a-d co-occurrence in an ordered monomial into acc."""
        ia, id_ = self.ad_pair
        ib, ic = ia + 1, ia + 2
        stack = [(mono, coeff)]
        while stack:
            m, c = stack.pop()
            if m[ia] > 0 and m[id_] > 0:
                qrs = q_pow(m[ib] + m[ic])
                m1 = list(m)
                m1[ia] -= 1
                m1[id_] -= 1
                stack.append((tuple(m1), c * qrs))
                m2 = list(m1)
                m2[ib] += 1
                m2[ic] += 1
                stack.append((tuple(m2), c * qrs * Q))
            else:
                acc[m] = acc.get(m, ZERO) + c

    def mul_mono(self, m1, m2, coeff, acc):
        """Accumulate coeff * m1 * m2 into the dict acc (canonical inputs)."""
        if self.factors:
            partials = []
            for f, s1, s2 in zip(self.factors, self.split_mono(m1), self.split_mono(m2)):
                d = {}
                f.mul_mono(s1, s2, ONE, d)
                partials.append(list(d.items()))
            for combo in itertools.product(*partials):
                c = coeff
                for _, cc in combo:
                    c = c * cc
                mono = self.join_monos([m for m, _ in combo])
                acc[mono] = acc.get(mono, ZERO) + c
            return
        if self.ad_pair:
            ia, id_ = self.ad_pair
            t1, k2 = m1[id_], m2[ia]
            if t1 > 0 and k2 > 0:
                left = list(m1)
                left[id_] = 0
                left = tuple(left)
                right = list(m2)
                right[ia] = 0
                right = tuple(right)
                for mid, cmid in self._da_expand(t1, k2).items():
                    e1, x = self._merge(left, mid)
                    e2, y = self._merge(x, right)
                    self._reduce_ordered(y, coeff * cmid * q_pow(e1 + e2), acc)
                return
            e, y = self._merge(m1, m2)
            if y[ia] > 0 and y[id_] > 0:
                self._reduce_ordered(y, coeff * q_pow(e), acc)
            else:
                acc[y] = acc.get(y, ZERO) + coeff * q_pow(e)
            return
        e, y = self._merge(m1, m2)
        acc[y] = acc.get(y, ZERO) + coeff * q_pow(e)

    def _elim_power(self, i: int, e: int):
        """Normal form of (eliminated generator)^e, e >= 1, as a term dict."""
        key = (i, e)
        hit = self._elim_pow_cache.get(key)
        if hit is not None:
            return hit
        if e == 1:
            out = {m: c for c, m in self.elim_gen[i]}
        else:
            prev = self._elim_power(i, e - 1)
            base = self._elim_power(i, 1)
            out = {}
            for m1, c1 in prev.items():
                for m2, c2 in base.items():
                    self.mul_mono(m1, m2, c1 * c2, out)
            out = {m: c for m, c in out.items() if c}
        self._elim_pow_cache[key] = out
        return out

    # -- basis enumeration ------------------------------------------------

    def basis_monomials(self, max_degree: int):
        """All canonical monomials with filtration degree <= max_degree."""
        assert not self.factors, "basis enumeration on base algebras only"
        ranges = []
        for i in range(self.n):
            if i in self.elim_gen:
                ranges.append([0])
            elif i in self.invertible:
                ranges.append(list(range(-max_degree, max_degree + 1)))
            else:
                ranges.append(list(range(0, max_degree + 1)))
        out = []
        for mono in itertools.product(*ranges):
            if sum(abs(e) for e in mono) > max_degree:
                continue
            if self.ad_pair:
                ia, id_ = self.ad_pair
                if mono[ia] > 0 and mono[id_] != 0:
                    continue
            out.append(mono)
        out.sort(key=lambda m: (self.mono_degree(m), m))
        return out


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

class NCPoly:
    """Sparse noncommutative polynomial in canonical form.

    Treat instances as immutable; the term dict is never mutated after
    construction.
    """

    __slots__ = ("alg", "terms")

    def __init__(self, alg: Algebra, terms: dict):
        self.alg = alg
        self.terms = terms

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def scalar_part(self):
        """The coefficient c if the value equals c*1, else None."""
        if not self.terms:
            return ZERO
        if len(self.terms) == 1:
            m, c = next(iter(self.terms.items()))
            if m == self.alg._zero_mono:
                return c
        return None

    def single_term(self):
        if len(self.terms) == 1:
            return next(iter(self.terms.items()))
        return None

    # -- arithmetic --------------------------------------------------------

    def _require_same(self, other):
        if self.alg is not other.alg:
            raise DomainError(
                f"presentation mismatch: {self.alg.name} vs {other.alg.name}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, QScalar)):
            other = self.alg.scalar(other)
        self._require_same(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, ZERO) + c
            if v:
                out[m] = v
            elif m in out:
                del out[m]
        return NCPoly(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, QScalar)):
            other = self.alg.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QScalar)):
            c = QScalar.coerce(other)
            if not c:
                return self.alg.zero()
            return NCPoly(self.alg, {m: v * c for m, v in self.terms.items()})
        self._require_same(other)
        acc = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                self.alg.mul_mono(m1, m2, c1 * c2, acc)
        return NCPoly(self.alg, {m: c for m, c in acc.items() if c})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, QScalar)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, NCPoly):
            s = other.scalar_part()
            if s is None:
                raise DomainError("division only by scalars")
            other = s
        return self * QScalar.coerce(other).inverse()

    def __pow__(self, e: int):
        if e < 0:
            inv = self.monomial_inverse()
            return inv ** (-e)
        r = self.alg.one()
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def monomial_inverse(self) -> NCPoly:
        """Inverse of a scalar multiple of an invertible monomial."""
        st = self.single_term()
        if st is None:
            raise DomainError("only monomials are invertible here")
        mono, c = st
        for i, e in enumerate(mono):
            if e and i not in self.alg.invertible:
                raise DomainError(
                    f"{self.alg.gens[i]} is not invertible in {self.alg.name}")
        inv_mono = tuple(-e for e in mono)
        # q-power so that mono * inv_mono = 1 exactly
        acc = {}
        self.alg.mul_mono(mono, inv_mono, ONE, acc)
        (m0, c0), = acc.items()
        assert m0 == self.alg._zero_mono
        return NCPoly(self.alg, {inv_mono: (c * c0).inverse()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QScalar)):
            other = self.alg.scalar(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.alg is other.alg and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.alg), frozenset(self.terms.items())))

    # -- queries ----------------------------------------------------------

    def degree(self):
        """Filtration degree: max total |exponent|; -inf for 0."""
        if not self.terms:
            return float("-inf")
        return max(self.alg.mono_degree(m) for m in self.terms)

    def coeff(self, mono) -> QScalar:
        return self.terms.get(tuple(mono), ZERO)

    def sorted_terms(self):
        return sorted(self.terms.items(),
                      key=lambda mc: (self.alg.mono_degree(mc[0]), mc[0]))

    # -- printing -----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            ms = self.alg.mono_str(mono)
            qm = c.is_q_monomial()
            multiterm = sum(1 for x in c.num if x) > 1
            if ms == "1":
                body = f"({c})" if multiterm else str(c)
                neg = body.startswith("-")
                if neg:
                    body = body[1:]
            elif qm is not None and qm[0] in (1, -1) and qm[0].denominator == 1:
                coef, e = qm
                neg = coef < 0
                body = ms if e == 0 else (
                    ("q" if e == 1 else f"q^{e}") + " " + ms)
            elif multiterm:
                # parenthesize composite coefficients so the grammar
                # round-trips
                neg = False
                body = f"({c}) * {ms}"
            else:
                body = str(c)
                neg = body.startswith("-")
                if neg:
                    body = body[1:]
                body = f"{body} * {ms}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"<{self.alg.name}: {self}>"


def filtration_degree(p: NCPoly):
    return p.degree()


# ---------------------------------------------------------------------------
# algebra maps
# ---------------------------------------------------------------------------

class AlgebraMap:
    """Multiplicative, linear extension of a generator assignment."""

    def __init__(self, source: Algebra, target: Algebra, images: dict,
                 name: str = ""):
        self.source = source
        self.target = target
        self.name = name or f"{source.name}->{target.name}"
        self.images = {}
        for g, img in images.items():
            if g not in source.gen_index:
                raise DomainError(f"{self.name}: unknown generator {g}")
            if isinstance(img, (int, Fraction, QScalar)):
                img = target.scalar(img)
            if img.alg is not target:
                raise DomainError(f"{self.name}: image of {g} in wrong algebra")
            self.images[g] = img
        self._pow_cache = {}

    def _power(self, i: int, e: int) -> NCPoly:
        key = (i, e)
        hit = self._pow_cache.get(key)
        if hit is not None:
            return hit
        g = self.source.gens[i]
        img = self.images.get(g)
        if img is None:
            raise DomainError(f"{self.name}: no image for generator {g}")
        if e >= 0:
            out = img ** e
        else:
            inv = self._pow_cache.get((i, -1))
            if inv is None:
                if img.is_zero():
                    raise DomainError(
                        f"{self.name}: image of {g} is not invertible")
                inv = img.monomial_inverse()
                self._pow_cache[(i, -1)] = inv
            out = inv ** (-e)
        self._pow_cache[key] = out
        return out

    def __call__(self, p: NCPoly) -> NCPoly:
        if p.alg is not self.source:
            raise DomainError(f"{self.name}: argument not in {self.source.name}")
        out = self.target.zero()
        for mono, c in p.terms.items():
            prod = self.target.scalar(c)
            for i, e in enumerate(mono):
                if e:
                    prod = prod * self._power(i, e)
                    if prod.is_zero():
                        break
            out = out + prod
        return out

    def check_relations(self):
        """Evaluate the source's defining relations on the images.

        Returns a list of names of failed relations (empty = algebra map).
        """
        failed = []
        for name, lhs, rhs in self.source.relation_words:
            if self._eval_terms(lhs) != self._eval_terms(rhs):
                failed.append(name)
        return failed

    def _eval_terms(self, terms) -> NCPoly:
        out = self.target.zero()
        for coeff, word in terms:
            p = self.target.scalar(coeff)
            for g, e in word:
                p = p * self._power(self.source.gen_index[g], e)
            out = out + p
        return out


# ---------------------------------------------------------------------------
# the standard algebra family
# ---------------------------------------------------------------------------

def _g_like(name, invertible, eliminate_a):
    comm = {(0, 1): -1, (0, 2): -1, (1, 2): 0, (1, 3): -1, (2, 3): -1}
    if eliminate_a:
        elim = {"a": [(ONE, (0, 0, 0, -1)), (Q, (0, 1, 1, -1))]}
        alg = Algebra(name, "abcd", invertible=invertible, comm=comm,
                      elim_gen=elim)
    else:
        alg = Algebra(name, "abcd", invertible=invertible, comm=comm,
                      ad_pair=(0, 3))
    alg.relation_words = [
        ("ab=qba", [(ONE, [("a", 1), ("b", 1)])], [(Q, [("b", 1), ("a", 1)])]),
        ("ac=qca", [(ONE, [("a", 1), ("c", 1)])], [(Q, [("c", 1), ("a", 1)])]),
        ("bc=cb", [(ONE, [("b", 1), ("c", 1)])], [(ONE, [("c", 1), ("b", 1)])]),
        ("bd=qdb", [(ONE, [("b", 1), ("d", 1)])], [(Q, [("d", 1), ("b", 1)])]),
        ("cd=qdc", [(ONE, [("c", 1), ("d", 1)])], [(Q, [("d", 1), ("c", 1)])]),
        ("ad-da=(q-q^-1)bc",
         [(ONE, [("a", 1), ("d", 1)]), (-ONE, [("d", 1), ("a", 1)])],
         [(Q - q_pow(-1), [("b", 1), ("c", 1)])]),
        ("ad-qbc=1",
         [(ONE, [("a", 1), ("d", 1)]), (-Q, [("b", 1), ("c", 1)])],
         [(ONE, [])]),
    ]
    return alg


class _Standard:
    """Singleton container for the fixed algebra family and tensor cache."""

    def __init__(self):
        self.G = _g_like("G", "", eliminate_a=False)
        self.Gb = _g_like("G_b", "b", eliminate_a=False)
        self.Gd = _g_like("G_d", "d", eliminate_a=True)
        self.Gbd = _g_like("G_bd", "bd", eliminate_a=True)
        self.B = Algebra("B", ("lambda", "xi"), invertible=("lambda",),
                         comm={(0, 1): -1})
        self.B.relation_words = [
            ("lambda xi=q xi lambda",
             [(ONE, [("lambda", 1), ("xi", 1)])],
             [(Q, [("xi", 1), ("lambda", 1)])]),
        ]
        self.M = Algebra("Manin", ("x", "y"), comm={(0, 1): -1})
        self.M.relation_words = [
            ("xy=qyx", [(ONE, [("x", 1), ("y", 1)])],
             [(Q, [("y", 1), ("x", 1)])]),
        ]
        self.G.star_images = {"a": ("d", ONE), "b": ("c", -Q),
                              "c": ("b", -q_pow(-1)), "d": ("a", ONE)}
        self._tensor_cache = {}
        self._iota_cache = {}

    def tensor(self, *factors) -> Algebra:
        key = tuple(id(f) for f in factors)
        hit = self._tensor_cache.get(key)
        if hit is not None:
            return hit
        gens = []
        invertible = []
        comm = {}
        off = 0
        for k, f in enumerate(factors):
            for i, g in enumerate(f.gens):
                gens.append(f"{g}@{k}" if len(factors) > 1 else g)
            for i in f.invertible:
                invertible.append(gens[off + i])
            for (i, j), c in f.comm.items():
                comm[(off + i, off + j)] = c
            off += f.n
        name = " (x) ".join(f.name for f in factors)
        alg = Algebra(name, gens, invertible=invertible, comm=comm,
                      factors=factors)
        self._tensor_cache[key] = alg
        return alg

    def localization_embedding(self, target: Algebra) -> AlgebraMap:
        """The canonical map of G into one of its localizations (or G itself)."""
        key = id(target)
        hit = self._iota_cache.get(key)
        if hit is None:
            hit = AlgebraMap(self.G, target,
                             {g: target.gen(g) for g in "abcd"},
                             name=f"iota[{target.name}]")
            self._iota_cache[key] = hit
        return hit

    def chart_to_double(self, source: Algebra) -> AlgebraMap:
        """The canonical map G_b -> G_bd or G_d -> G_bd."""
        key = (id(source), id(self.Gbd))
        hit = self._iota_cache.get(key)
        if hit is None:
            hit = AlgebraMap(source, self.Gbd,
                             {g: self.Gbd.gen(g) for g in "abcd"},
                             name=f"iota[{source.name}->G_bd]")
            self._iota_cache[key] = hit
        return hit


STD = _Standard()


# ---------------------------------------------------------------------------
# star structure and retraction to G
# ---------------------------------------------------------------------------

def star(p: NCPoly) -> NCPoly:
    """Antilinear antihomomorphic involution on G.

    Localized arguments are rejected; rewrite them into the image of G
    first (see `retract`).
    """
    alg = p.alg
    if alg.star_images is None:
        raise DomainError(
            f"star is not defined on {alg.name}; retract to G first")
    out = alg.zero()
    for mono, c in p.terms.items():
        prod = alg.scalar(c)  # coefficients are real rational functions
        for i in range(alg.n - 1, -1, -1):
            e = mono[i]
            if e < 0:
                raise DomainError("star of an inverted generator")
            if e:
                g, s = alg.star_images[alg.gens[i]]
                prod = prod * (alg.gen(g) * s) ** e
        out = out + prod
    return out


def retract(p: NCPoly, target: Algebra) -> NCPoly:
    """Identify an element of a localization with its preimage in `target`.

    Monomials carry over verbatim; fails if any exponent is illegal in the
    target (the element then does not lie in the image).
    """
    out = {}
    for mono, c in p.terms.items():
        target.check_mono(mono)
        out[mono] = c
    return NCPoly(target, out)


# ---------------------------------------------------------------------------
# tensor utilities
# ---------------------------------------------------------------------------

def tensor_elem(talg: Algebra, parts) -> NCPoly:
    """The elementary tensor of the given factor elements."""
    assert talg.factors and len(parts) == len(talg.factors)
    out = {}
    for combo in itertools.product(*[list(p.terms.items()) for p in parts]):
        mono = talg.join_monos([m for m, _ in combo])
        c = ONE
        for _, cc in combo:
            c = c * cc
        out[mono] = out.get(mono, ZERO) + c
    return NCPoly(talg, {m: c for m, c in out.items() if c})


def apply_tensor_map(p: NCPoly, maps, target: Algebra) -> NCPoly:
    """Apply per-factor maps (None = identity) to a tensor element."""
    src = p.alg
    assert src.factors and target.factors and len(maps) == len(src.factors)
    out = target.zero()
    for mono, c in p.terms.items():
        parts = []
        for f, sub, fmap, tf in zip(src.factors, src.split_mono(mono), maps,
                                    target.factors):
            elem = NCPoly(f, {sub: ONE})
            parts.append(elem if fmap is None else fmap(elem))
        out = out + tensor_elem(target, parts) * c
    return out


# ---------------------------------------------------------------------------
# words, the randomized rewriter, and the confluence probe
# ---------------------------------------------------------------------------
#
# A word is a list of (generator index, exponent) segments with a scalar
# coefficient.  The engine normal form multiplies the segments as NCPolys;
# the randomized rewriter applies one randomly chosen redex at a time and
# must converge to the same canonical polynomial.

def normal_form_of_word(alg: Algebra, word, coeff=ONE) -> NCPoly:
    p = alg.scalar(coeff)
    for i, e in word:
        g = alg.gens[i]
        if e < 0 and i not in alg.invertible:
            raise DomainError(f"negative exponent on {g}")
        p = p * alg.gen(g, 1) ** e if i in alg.elim_gen else p * alg.gen(g, e)
    return p


def _word_cleanup(word):
    out = []
    for g, e in word:
        if e == 0:
            continue
        if out and out[-1][0] == g:
            out[-1] = (g, out[-1][1] + e)
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append((g, e))
    return out


def _find_redexes(alg: Algebra, word):
    """All single-step rewrites available on a word."""
    redexes = []
    ad = alg.ad_pair
    for pos in range(len(word)):
        g, e = word[pos]
        if g in alg.elim_gen and e != 0:
            redexes.append(("elim", pos))
    for pos in range(len(word) - 1):
        (g1, e1), (g2, e2) = word[pos], word[pos + 1]
        if g1 == g2:
            continue
        if ad and {g1, g2} == set(ad) and not alg.elim_gen:
            redexes.append(("adpair", pos))
        elif g1 > g2 and (g2, g1) in alg.comm:
            redexes.append(("swap", pos))
    if ad and not alg.elim_gen:
        ia, id_ = ad
        # separated a..d / d..a with only b,c between
        for p1 in range(len(word)):
            if word[p1][0] not in (ia, id_):
                continue
            for p2 in range(p1 + 1, len(word)):
                g2 = word[p2][0]
                if g2 in (ia, id_):
                    if {word[p1][0], g2} == {ia, id_} and p2 > p1 + 1:
                        redexes.append(("transport", p1, p2))
                    break
    return redexes


def _apply_redex(alg: Algebra, word, coeff, redex):
    """Apply one redex; returns a list of (word, coeff) branches."""
    kind = redex[0]
    if kind == "swap":
        pos = redex[1]
        (g1, e1), (g2, e2) = word[pos], word[pos + 1]
        c = alg.comm[(g2, g1)]  # g1 > g2 here
        new = word[:pos] + [(g2, e2), (g1, e1)] + word[pos + 2:]
        return [(_word_cleanup(new), coeff * q_pow(c * e1 * e2))]
    if kind == "elim":
        pos = redex[1]
        g, e = word[pos]
        if e < 0:
            raise DomainError("negative power of an eliminated generator")
        out = []
        for c, mono in alg.elim_gen[g]:
            seg = [(i, x) for i, x in enumerate(mono) if x]
            out.append((_word_cleanup(word[:pos] + seg +
                                      ([(g, e - 1)] if e != 1 else []) +
                                      word[pos + 1:]), coeff * c))
        return out
    ia, id_ = alg.ad_pair
    ib, ic = ia + 1, ia + 2
    if kind == "adpair":
        pos = redex[1]
        (g1, e1), (g2, e2) = word[pos], word[pos + 1]
        left = [(g1, e1 - 1)] if e1 > 1 else []
        right = [(g2, e2 - 1)] if e2 > 1 else []
        pre, post = word[:pos], word[pos + 2:]
        if g1 == ia:  # a d -> 1 + q b c
            br1 = (_word_cleanup(pre + left + right + post), coeff)
            br2 = (_word_cleanup(pre + left + [(ib, 1), (ic, 1)] + right + post),
                   coeff * Q)
        else:  # d a -> 1 + q^-1 b c
            br1 = (_word_cleanup(pre + left + right + post), coeff)
            br2 = (_word_cleanup(pre + left + [(ib, 1), (ic, 1)] + right + post),
                   coeff * q_pow(-1))
        return [br1, br2]
    if kind == "transport":
        # move one unit of the right member left to adjacency
        p1, p2 = redex[1], redex[2]
        gR, eR = word[p2]
        qexp = 0
        for g, e in word[p1 + 1:p2]:
            lo, hi = min(g, gR), max(g, gR)
            c = alg.comm[(lo, hi)]
            # moving gR (one unit) left past g^e
            qexp += -c * e if gR > g else c * e
        new = (word[:p1 + 1] + [(gR, 1)] + word[p1 + 1:p2] +
               ([(gR, eR - 1)] if eR != 1 else []) + word[p2 + 1:])
        return [(_word_cleanup(new), coeff * q_pow(qexp))]
    raise AssertionError(kind)


def _rewrite_random(alg: Algebra, word, rng, max_steps=200000):
    """Fully reduce by randomly chosen redexes; returns a term dict."""
    work = [(_word_cleanup(list(word)), ONE)]
    done = {}
    steps = 0
    while work:
        idx = rng.randrange(len(work))
        w, c = work[idx]
        redexes = _find_redexes(alg, w)
        if not redexes:
            work.pop(idx)
            mono = [0] * alg.n
            for g, e in w:
                mono[g] += e
            mono = tuple(mono)
            done[mono] = done.get(mono, ZERO) + c
            continue
        steps += 1
        if steps > max_steps:
            raise RuntimeError("rewriting did not terminate within bounds")
        redex = redexes[rng.randrange(len(redexes))]
        work.pop(idx)
        work.extend(_apply_redex(alg, w, c, redex))
    return {m: c for m, c in done.items() if c}


def random_word(alg: Algebra, rng: random.Random, max_degree: int,
                max_segments: int = 6):
    """A random word within the filtration-degree budget."""
    word = []
    budget = max_degree
    for _ in range(rng.randrange(1, max_segments + 1)):
        if budget <= 0:
            break
        i = rng.randrange(alg.n)
        lo = -min(3, budget) if i in alg.invertible else 1
        hi = min(3, budget)
        e = 0
        while e == 0:
            e = rng.randint(lo, hi)
        word.append((i, e))
        budget -= abs(e)
    return word or [(0, 1)]


def confluence_probe(alg: Algebra, samples: int, degree: int, seed: int = 0):
    """Reduce random words by two independently randomized rule orders and
    by the engine; report any pair of distinct normal forms."""
    rng = random.Random(seed)
    discrepancies = []
    checked = 0
    for k in range(samples):
        word = random_word(alg, rng, degree)
        engine = normal_form_of_word(alg, word)
        r1 = _rewrite_random(alg, list(word), random.Random(rng.randrange(2 ** 30)))
        r2 = _rewrite_random(alg, list(word), random.Random(rng.randrange(2 ** 30)))
        checked += 1
        nf1, nf2 = NCPoly(alg, r1), NCPoly(alg, r2)
        ok = engine == nf1 == nf2
        basis_ok = True
        for p in (engine, nf1, nf2):
            for mono in p.terms:
                try:
                    alg.check_mono(mono)
                except DomainError:
                    basis_ok = False
        if not (ok and basis_ok):
            discrepancies.append({
                "word": [(alg.gens[g], e) for g, e in word],
                "engine": str(engine),
                "random_1": str(nf1),
                "random_2": str(nf2),
                "basis_ok": basis_ok,
            })
    return {
        "algebra": alg.name,
        "samples": checked,
        "degree": degree,
        "seed": seed,
        "discrepancies": discrepancies,
        "passed": not discrepancies,
    }


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def parse_element(text: str, alg: Algebra) -> NCPoly:
    """Parse the expression grammar into a canonical element of `alg`."""
    from .parsing import parse_with_context
    atoms = {"1": alg.one(), "q": alg.scalar(Q)}
    for g in alg.gens:
        atoms[g] = alg.gen(g)
    v = parse_with_context(text, atoms)
    if isinstance(v, QScalar):
        v = alg.scalar(v)
    return v
