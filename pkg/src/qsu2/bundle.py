"""Sections of the quantum line bundle, the kappa transforms, and the
gluing isomorphism with the cotensor product.

Everything is instantiated on the fixed two-chart cover and the comodules
C_chi and V_n; kernels are computed on filtration slices with exact linear
algebra, and a dimension change between consecutive cutoffs fails the run.
"""

from __future__ import annotations

import random

from . import linalg
from .charts import TrivializationChart, coinv_poly_coeffs, cover
from .comod import VnComodule
from .hopf import hopf_B, hopf_G, pi_map
from .ncalg import (DomainError, NCPoly, STD, normal_form_of_word,
                    random_word, tensor_elem)
from .scalars import ONE, ZERO

__all__ = [
    "Section",
    "CotensorSlice",
    "LeftBComodule",
    "c_chi",
    "vn_left_comodule",
    "kappa",
    "kappa_bar",
    "in_cotensor",
    "sections_space",
    "cotensor_slice",
    "glue_iso_check",
]


class LeftBComodule:
    """A finite-dimensional left B-comodule given by basis coactions.

    `coact(j)` returns the left coaction of basis vector j as a list of
    (element of B, basis index) pairs.
    """

    def __init__(self, name, dim, coactions):
        self.name = name
        self.dim = dim
        self._coactions = coactions

    def coact(self, j):
        return self._coactions[j]


def c_chi(n: int) -> LeftBComodule:
    """The one-dimensional comodule with left coaction 1 -> chi (x) 1."""
    return LeftBComodule(f"C_chi(n={n})", 1,
                         [[(STD.B.gen("lambda", -n), 0)]])


def vn_left_comodule(n: int) -> LeftBComodule:
    """V_n as a left B-comodule via the standard antipode side conversion:
    e_i -> sum_j S_B(tB[j][i]) (x) e_j."""
    V = VnComodule(n)
    tB = V.rho_B_matrix()
    HB = hopf_B()
    coactions = []
    for i in range(n + 1):
        row = []
        for j in range(n + 1):
            s = HB.antipode(tB[j][i])
            if not s.is_zero():
                row.append((s, j))
        coactions.append(row)
    return LeftBComodule(f"V_{n} (left)", n + 1, coactions)


def kappa(ch: TrivializationChart, F, M: LeftBComodule):
    """kappa^gamma(sum e_j (x) m_j) = sum e_j gamma(m_(-1)) (x) m_(0).

    F is a list of chart elements indexed by the M basis."""
    out = [ch.alg.zero() for _ in range(M.dim)]
    for j, f in enumerate(F):
        if f.is_zero():
            continue
        for beta, k in M.coact(j):
            out[k] = out[k] + f * ch.gamma(beta)
    return out


def kappa_bar(ch: TrivializationChart, F, M: LeftBComodule):
    """The convolution inverse: gamma o S_B in place of gamma."""
    HB = hopf_B()
    out = [ch.alg.zero() for _ in range(M.dim)]
    for j, f in enumerate(F):
        if f.is_zero():
            continue
        for beta, k in M.coact(j):
            out[k] = out[k] + f * ch.gamma(HB.antipode(beta))
    return out


def in_cotensor(ch: TrivializationChart, F, M: LeftBComodule) -> bool:
    """Membership in E box M: (rho_E x id)F = (id x rho_M)F."""
    EB = ch.target  # chart (x) B
    for j in range(M.dim):
        # slot j of (rho_E x id)F is rho_B(F_j); slot j of (id x rho_M)F
        # collects F_i (x) beta over coactions e_i -> beta (x) e_j
        lhs = ch.rho_B(F[j])
        rhs = EB.zero()
        for i in range(M.dim):
            for beta, k in M.coact(i):
                if k == j:
                    rhs = rhs + tensor_elem(EB, [F[i], beta])
        if lhs != rhs:
            return False
    return True


def coinvariant_components(ch: TrivializationChart, F) -> bool:
    """Every component lies in the localized coinvariants."""
    for f in F:
        if ch.rho_B(f) != tensor_elem(ch.target, [f, STD.B.one()]):
            return False
    return True


class Section:
    """A global section of L_chi: a gluing pair (f_b, f_d)."""

    def __init__(self, f_b: NCPoly, f_d: NCPoly, n: int, check=True):
        self.f_b = f_b
        self.f_d = f_d
        self.n = n
        if check and not self.glues():
            raise DomainError(f"pair does not glue: ({f_b}, {f_d})")

    def glues(self) -> bool:
        """f_b gamma_b(chi) = f_d gamma_d(chi) in G_bd, checked for both
        consecutive-localization orders (they coincide for this cover)."""
        cov = cover()
        lhs = cov.to_double_b(self.f_b * cov.b.gamma_chi(self.n))
        rhs = cov.to_double_d(self.f_d * cov.d.gamma_chi(self.n))
        return lhs == rhs

    def __repr__(self):
        return f"Section(n={self.n}, f_b={self.f_b}, f_d={self.f_d})"


class CotensorSlice:
    """Basis of {g in G : rho_B(g) = g (x) lambda^-n} within a cutoff."""

    def __init__(self, n: int, degree: int, basis):
        self.n = n
        self.degree = degree
        self.basis = basis

    @property
    def dim(self):
        return len(self.basis)


_RHO_BG = None


def _rho_B_G():
    """(id x pi) Delta as a map G -> G (x) B."""
    global _RHO_BG
    if _RHO_BG is None:
        G = STD.G
        HG = hopf_G()
        pi = pi_map()
        GB = STD.tensor(G, STD.B)
        images = {}
        for g in "abcd":
            dp = HG.delta(G.gen(g))
            img = GB.zero()
            for mono, c in dp.terms.items():
                m1, m2 = HG.T2.split_mono(mono)
                img = img + tensor_elem(GB, [NCPoly(G, {m1: ONE}),
                                             pi(NCPoly(G, {m2: ONE}))]) * c
            images[g] = img
        from .ncalg import AlgebraMap
        _RHO_BG = AlgebraMap(G, GB, images, name="rho_B[G]")
    return _RHO_BG


def cotensor_slice(n: int, degree: int) -> CotensorSlice:
    G = STD.G
    rho = _rho_B_G()
    GB = rho.target
    chi_elem = STD.B.gen("lambda", -n)
    monos = G.basis_monomials(degree)
    columns = []
    for m in monos:
        p = NCPoly(G, {m: ONE})
        diff = rho(p) - tensor_elem(GB, [p, chi_elem])
        columns.append(dict(diff.terms))
    basis = []
    for vec in linalg.kernel_basis(columns):
        terms = {m: c for m, c in zip(monos, vec) if c}
        basis.append(NCPoly(G, terms))
    return CotensorSlice(n, degree, basis)


def sections_space(n: int, degree: int):
    """Basis of gluing pairs with u- and u'-degree up to `degree`."""
    cov = cover()
    ub = [cov.b.coinv_gen ** k for k in range(degree + 1)]
    ud = [cov.d.coinv_gen ** k for k in range(degree + 1)]
    gb, gd = cov.b.gamma_chi(n), cov.d.gamma_chi(n)
    columns = []
    for p in ub:
        columns.append(dict(cov.to_double_b(p * gb).terms))
    for p in ud:
        columns.append({m: -c for m, c in
                        cov.to_double_d(p * gd).terms.items()})
    out = []
    for vec in linalg.kernel_basis(columns):
        f_b = cov.b.alg.zero()
        f_d = cov.d.alg.zero()
        for k, c in enumerate(vec[:degree + 1]):
            if c:
                f_b = f_b + ub[k] * c
        for k, c in enumerate(vec[degree + 1:]):
            if c:
                f_d = f_d + ud[k] * c
        out.append(Section(f_b, f_d, n))
    return out


def _section_coords(sec: Section, degree: int):
    cov = cover()
    cb = coinv_poly_coeffs(sec.f_b, cov.b)
    cd = coinv_poly_coeffs(sec.f_d, cov.d)
    if cb is None or cd is None:
        return None
    cb = cb + [ZERO] * (degree + 1 - len(cb))
    cd = cd + [ZERO] * (degree + 1 - len(cd))
    return cb + cd


def glue_iso_check(n: int, degree: int, seed: int = 0, kappa_samples: int = 50):
    """The Theorem-2/Theorem-3 package at one cutoff.

    Returns the shared check list: dimension agreement and stability,
    bijectivity of g -> (iota_b(g) gamma_b(chi)^-1, iota_d(g) gamma_d(chi)^-1)
    onto the section space, the kappa/kappa-bar identities and image
    characterization, and the comodule intertwiner with V_n.
    """
    if degree < n:
        raise ValueError("degree must be at least n")
    checks = []
    cov = cover()
    B = STD.B
    G = STD.G

    def emit(name, ok, anchor, witness=None):
        checks.append({"name": f"n={n}.{name}",
                       "status": "pass" if ok else "fail",
                       "paper_anchor": anchor,
                       **({"witness": str(witness)} if witness is not None
                          and not ok else {})})

    slice_now = cotensor_slice(n, degree)
    slice_next = cotensor_slice(n, degree + 1)
    secs_now = sections_space(n, degree)
    secs_next = sections_space(n, degree + 1)
    emit("cotensor_dim", slice_now.dim == n + 1,
         "Gamma L_chi isomorphic to the cotensor product; dim = n+1",
         slice_now.dim)
    emit("sections_dim", len(secs_now) == n + 1,
         "space of gluing pairs f_lambda gamma_lambda(chi) = ...",
         len(secs_now))
    emit("cutoff_stability",
         slice_next.dim == slice_now.dim and len(secs_next) == len(secs_now),
         "dimensions stable under cutoff increase",
         (slice_now.dim, slice_next.dim, len(secs_now), len(secs_next)))

    # bijectivity of the gluing map
    gb_inv = cov.b.gamma(B.gen("lambda", n))
    gd_inv = cov.d.gamma(B.gen("lambda", n))
    sec_mat = [_section_coords(s, degree) for s in secs_now]
    images = []
    ok = True
    witness = None
    for g in slice_now.basis:
        f_b = cov.b.iota(g) * gb_inv
        f_d = cov.d.iota(g) * gd_inv
        try:
            sec = Section(f_b, f_d, n)
        except DomainError as exc:
            ok, witness = False, exc
            break
        coords = _section_coords(sec, degree)
        if coords is None:
            ok, witness = False, f"image not polynomial in u/u': {sec}"
            break
        images.append(coords)
    emit("glue_map_lands_in_sections", ok,
         "g -> (iota_b(g) gamma_b(chi)^-1, iota_d(g) gamma_d(chi)^-1)",
         witness)
    if ok and len(images) == len(sec_mat) == n + 1:
        # change of basis between images and the section basis is invertible
        cols = [{i: v for i, v in enumerate(col)} for col in sec_mat]
        coeffs = []
        solvable = True
        for img in images:
            sol = linalg.in_span(cols, {i: v for i, v in enumerate(img)})
            if sol is None:
                solvable = False
                break
            coeffs.append(sol)
        inv = linalg.invert_matrix(coeffs) if solvable else None
        emit("glue_map_bijective", solvable and inv is not None,
             "naturally isomorphic to the cotensor product as a vector space")
    else:
        emit("glue_map_bijective", False, "dimension mismatch")

    # kappa / kappa-bar on random inputs, both comodules, both charts
    rng = random.Random(seed)
    ok = True
    witness = None
    for ch in (cov.d, cov.b):
        for M in (c_chi(n), vn_left_comodule(n)):
            for _ in range(kappa_samples // 2):
                F = [normal_form_of_word(ch.alg, random_word(ch.alg, rng, 3))
                     for _ in range(M.dim)]
                if (kappa(ch, kappa_bar(ch, F, M), M) != F
                        or kappa_bar(ch, kappa(ch, F, M), M) != F):
                    ok, witness = False, (ch.name, M.name, [str(f) for f in F])
                    break
    emit("kappa_inverse", ok, "kappa o kappa-bar = Id = kappa-bar o kappa",
         witness)

    # image characterization at the cutoff
    ok = True
    witness = None
    for ch in (cov.d, cov.b):
        M = c_chi(n)
        for k in range(degree + 1):
            F = [ch.coinv_gen ** k]
            img = kappa(ch, F, M)
            if not in_cotensor(ch, img, M):
                ok, witness = False, (ch.name, f"u^{k}")
                break
        # localized cotensor elements map back into coinvariants (x) M
        chi_elem = B.gen("lambda", -n)
        monos = ch.alg.basis_monomials(max(2, n))
        cols = []
        for m in monos:
            p = NCPoly(ch.alg, {m: ONE})
            diff = ch.rho_B(p) - tensor_elem(ch.target, [p, chi_elem])
            cols.append(dict(diff.terms))
        for vec in linalg.kernel_basis(cols):
            h = NCPoly(ch.alg, {m: c for m, c in zip(monos, vec) if c})
            back = kappa_bar(ch, [h], M)
            if not coinvariant_components(ch, back):
                ok, witness = False, (ch.name, str(h))
                break
    emit("kappa_image_characterization", ok,
         "Im(kappa|) = E box M and Im(kappa-bar|) = E^coB (x) M", witness)

    # the right G-comodule structure matches V_n via an intertwiner
    V = VnComodule(n)
    t = V.coaction_matrix
    HG = hopf_G()
    GG = HG.T2
    m = n + 1
    s_basis = slice_now.basis
    delta_s = [HG.delta(s) for s in s_basis]
    columns = []
    for jj in range(m):
        for kk in range(m):
            col = {}
            # Delta(sum_k Phi[j][k] s_k) term for unknown Phi[jj][kk]
            for mono, c in delta_s[kk].terms.items():
                key = (jj, mono)
                col[key] = col.get(key, ZERO) + c
            # minus sum_i t[j][i] (x) (sum_k Phi[i][k] s_k): unknown Phi[jj][kk]
            # appears with i = jj inside the row-j equation for every j
            for j in range(m):
                part = tensor_elem(GG, [t[j][jj], s_basis[kk]])
                for mono, c in part.terms.items():
                    key = (j, mono)
                    col[key] = col.get(key, ZERO) - c
            columns.append(col)
    sols = linalg.kernel_basis(columns)
    phi_ok = False
    if len(sols) == 1:
        vec = sols[0]
        phi = [[vec[j * m + k] for k in range(m)] for j in range(m)]
        phi_ok = linalg.invert_matrix(phi) is not None
    emit("coaction_intertwiner", phi_ok,
         "the equivalences respect the D-comodule structure "
         "(induced comodule is V_n)", len(sols))
    return checks
