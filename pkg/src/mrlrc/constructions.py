"""Explicit maximally recoverable codes with two and three heavy parities."""

from __future__ import annotations

from .errors import OmegaTooSmall, PreconditionViolated
from .field import make_cubic_extension, subgroup_of_order
from .fieldsearch import FieldSearchResult
from .lrc import LrcCode, LrcParams, assemble
from .matrix import Matrix, cauchy, vandermonde


def construct_h2(n: int, r: int, a: int, found: FieldSearchResult) -> LrcCode:
    """Vandermonde local blocks in a subgroup ``G``; heavy rows ``lambda_i`` and ``alpha^(a+1)``.

    ``alpha_j`` are successive powers of the generator of ``G`` and
    ``lambda_i`` are representatives of distinct cosets of ``G``.
    """
    F = found.field
    params = LrcParams(n, r, a, 2, F)
    g = params.g
    if found.subgroup_order < r:
        raise PreconditionViolated(f"subgroup of order {found.subgroup_order} is smaller than r={r}")
    if found.num_cosets < g:
        raise PreconditionViolated(f"only {found.num_cosets} cosets for {g} groups")
    G = subgroup_of_order(F, found.subgroup_order, g)
    alphas = [F.pow(G.generator, j) for j in range(r)]
    A = vandermonde(F, alphas, a, 1)
    top = Matrix(F, [[F.pow(x, a + 1) for x in alphas]], r)
    B_blocks = [Matrix(F, [[lam] * r, top.rows[0]], r) for lam in G.coset_reps]
    return assemble(params, [A] * g, B_blocks)


def omega_set(F0, G, b2: int, b3: int) -> list:
    """``{x != b3 : (x - b2) / (x - b3) in G}`` in ascending encoding order."""
    return [x for x in F0.elements()
            if x != b3 and G.contains(F0.div(F0.sub(x, b2), F0.sub(x, b3)))]


def h3_parameters(r: int, a: int, F0, G):
    """Deterministic choice of ``alpha_1..r``, ``beta_1..a+3`` and the set Omega."""
    b1, b2 = 0, 1
    omega = None
    for b3 in range(2, F0.order):
        omega = omega_set(F0, G, b2, b3)
        if len([x for x in omega if x != b1]) >= r:
            break
    else:
        raise OmegaTooSmall("no choice of the third pole leaves enough points")
    alphas = [x for x in omega if x != b1][:r]
    if len(alphas) < r:
        raise OmegaTooSmall(f"|Omega| = {len(omega)} is too small for r={r}")
    used = set(alphas) | {b1, b2, b3}
    betas = [x for x in F0.elements() if x not in used][:a]
    if len(betas) < a:
        raise PreconditionViolated("base field too small for the local poles")
    return alphas, betas + [b1, b2, b3], omega


def construct_h3(n: int, r: int, a: int, found: FieldSearchResult) -> LrcCode:
    """Cauchy local blocks over ``F_q0``; heavy blocks over the cubic extension ``F_q0^3``."""
    F0 = found.field
    g = n // r if r and n % r == 0 else 0
    if F0.order < 2 * r + 3:
        raise PreconditionViolated(f"base field order {F0.order} is below 2r+3 = {2 * r + 3}")
    if found.subgroup_order < r + 2:
        raise PreconditionViolated(f"subgroup of order {found.subgroup_order} is below r+2")
    F = make_cubic_extension(F0)
    params = LrcParams(n, r, a, 3, F)
    if found.num_cosets < g:
        raise PreconditionViolated(f"only {found.num_cosets} cosets for {g} groups")
    G = subgroup_of_order(F0, found.subgroup_order, g)
    alphas, betas, _ = h3_parameters(r, a, F0, G)
    A = cauchy(F, alphas, betas[:a])
    ba1, ba2, ba3 = betas[a:]
    inv1 = [F0.inv(F0.sub(x, ba1)) for x in alphas]
    inv2 = [F0.inv(F0.sub(x, ba2)) for x in alphas]
    inv3 = [F0.inv(F0.sub(x, ba3)) for x in alphas]
    B_blocks = []
    for i in range(g):
        lam = tower_lambda(F, F0, i)
        mu = G.coset_reps[i]
        B_blocks.append(Matrix(F, [[F.mul(lam, v) for v in inv1],
                                   [F.mul(mu, v) for v in inv2],
                                   inv3], r))
    return assemble(params, [A] * g, B_blocks)


def tower_lambda(F, F0, i: int) -> int:
    """``1 + gamma X + gamma^2 X^2`` with ``gamma`` the ``i``-th base element."""
    gamma = i
    return F.from_coeffs((1, gamma, F0.mul(gamma, gamma)))
