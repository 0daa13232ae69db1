"""Factorization routes for SL_n, n > 2, plus the top-level dispatcher.

Every route assembles its certificate from smaller certified pieces via
the transport operations (conjugation, direct sums, inversion), so each
intermediate is independently verifiable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import FieldSpec, FieldElement, sqrt, sum_of_two_nonzero_squares, \
    square_class_pairing
from .linalg import (Matrix, identity, diagonal, jordan_block, direct_sum_all,
                     unipotent_jordan, find_diagonal_permutation,
                     similarity_to_diagonal, diagonalize_known_spectrum,
                     ScalarInput)
from .unipotent import (Factorization, CommutatorPair, commutator,
                        identity_factorization, conjugate_factorization,
                        invert_factorization, direct_sum_factorization,
                        embed_factorization, concat_factorizations)
from .factor_sl2 import (factor_sl2, diag_commutator, neg_identity,
                         FactorError, OutsideDerivedSubgroup)
from .sourour import sourour_factor


class NotSLn(FactorError):
    pass


class UnsupportedFieldSize(FactorError):
    pass


# -- promised upper bounds on pair counts -------------------------------------

def promised_max_pairs(F: FieldSpec, n: int) -> int:
    """Maximum commutator-pair count the dispatcher promises for (F, n)."""
    if n == 1:
        return 0
    q = F.size  # None for Q
    if n == 2:
        if F.is_finite and q <= 3:
            return q - 1
        if F.p == 2:
            return 2
        if sum_of_two_nonzero_squares(-F.one()) is not None:
            return 2
        return 3
    if F.is_finite and q <= 3:
        raise UnsupportedFieldSize("no constructive route for n > 2, |F| <= 3")
    half = n // 2
    if F.p == 2 and (not F.is_finite or q >= 2 * half + 2):
        return 2
    if not F.is_finite or q >= 4 * half + 5:
        return 3
    return 4


# -- explicit small constructions ----------------------------------------------

def i_plus_j21(F: FieldSpec) -> Factorization:
    """One-pair certificate for [1] (+) J_2(1), from an explicit pair of
    3x3 U2-matrices."""
    X = Matrix.from_ints(F, [[1, 0, 1], [0, 1, 0], [0, 0, 1]])
    Y = Matrix.from_ints(F, [[1, 0, 0], [-1, 1, 0], [0, 0, 1]])
    target = direct_sum_all([identity(F, 1), jordan_block(F, 2, F.one())])
    assert commutator(X, Y) == target
    return Factorization(target, (CommutatorPair(X, Y),), ("prop4.1",))


def _jn1_xy(F: FieldSpec, n: int):
    """The parity-split pair (X_n, Y_n) whose commutator has Jordan type
    (ceil(n/2), floor(n/2))."""
    one_block = identity(F, 1)
    j2 = jordan_block(F, 2, F.one())
    if n % 2 == 0:
        X = direct_sum_all([one_block] + [j2] * ((n - 2) // 2) + [one_block])
        Y = direct_sum_all([j2] * (n // 2))
    else:
        X = direct_sum_all([one_block] + [j2] * ((n - 1) // 2))
        Y = direct_sum_all([j2] * ((n - 1) // 2) + [one_block])
    return X, Y


def jn1_factor(n: int, F: FieldSpec) -> Factorization:
    """At most two pairs for the full Jordan block J_n(1), n > 2."""
    if n <= 2:
        raise FactorError("route applies to n > 2 only")
    one = F.one()
    X, Y = _jn1_xy(F, n)
    M = commutator(X, Y)
    jd = unipotent_jordan(M)
    hi, lo = (n + 1) // 2, n // 2
    assert jd.partition == (hi, lo), jd.partition
    # first factor: J_hi(1) (+) J_lo(1), via the conjugated explicit pair
    f1 = conjugate_factorization(
        Factorization(M, (CommutatorPair(X, Y),), (f"prop4.3(n={n})",)),
        jd.transform)
    # second factor: I (+) J_2(1) (+) I straddling the block boundary
    before = lo if n % 2 else hi - 1
    after = n - before - 2
    f2 = embed_factorization(i_plus_j21(F), before - 1, after) \
        if before >= 1 else embed_factorization(i_plus_j21(F), 0, after)
    assert f2.target.n == n
    G = f1.target @ f2.target
    fG = concat_factorizations(G, [f1, f2])
    jg = unipotent_jordan(G)
    assert jg.partition == (n,), "glued product must be a single Jordan block"
    out = conjugate_factorization(fG, jg.transform)
    assert out.target == jordan_block(F, n, one)
    return out


# -- diagonal-blockwise assembly helpers ----------------------------------------

def _factor_sl2_blocks(blocks, route_tag: str) -> Factorization:
    """Certificate for a direct sum of 2x2 (or 1x1 identity) SL blocks;
    each block is dispatched through factor_sl2 and combined by padded
    direct sums (pair count = max over blocks)."""
    certs = []
    for blk in blocks:
        if blk.n == 1:
            assert blk.is_identity()
            certs.append(identity_factorization(blk.field, 1))
        else:
            certs.append(factor_sl2(blk))
    out = certs[0]
    for c in certs[1:]:
        out = direct_sum_factorization(out, c)
    return Factorization(out.target, out.pairs, (route_tag,) + out.route)


def _diag_pair_cert(F, a: FieldElement) -> Factorization:
    """Certificate for diag(a, a^-1): empty when a = 1, else one pair."""
    if a.is_one():
        return identity_factorization(F, 2)
    return diag_commutator(a)


def _square_diag_blocks_cert(F, values, route_tag: str) -> Factorization:
    """Certificate for (+)_i diag(v_i, v_i^-1) where every v_i is a
    square (or 1); exactly one pair unless all blocks are trivial."""
    certs = [_diag_pair_cert(F, v) for v in values]
    out = certs[0]
    for c in certs[1:]:
        out = direct_sum_factorization(out, c)
    return Factorization(out.target, out.pairs, (route_tag,) + out.route)


# -- scalar matrices --------------------------------------------------------------

def scalar_factor(lam: FieldElement, n: int) -> Factorization:
    """Certificate for lam * I_n (requires lam^n = 1)."""
    F = lam.field
    one = F.one()
    if lam ** n != one:
        raise NotSLn("lambda^n != 1")
    if lam == one:
        return identity_factorization(F, n)
    if n == 2:
        return factor_sl2(diagonal(F, [lam, lam]))
    if F.is_finite and F.size <= 3:
        raise UnsupportedFieldSize("no scalar route for |F| <= 3, n > 2")
    target = diagonal(F, [lam] * n)
    if n % 2 == 1:
        return _scalar_odd(lam, n, target)
    if F.is_finite and F.size == 5:
        return _scalar_even_gf5(lam, n, target)
    if not F.is_finite or F.size > 2 * n + 1:
        return _scalar_even_bigfield(lam, n, target)
    return _scalar_even_general(lam, n, target)


def _scalar_odd(lam, n, target):
    """Odd n: two factors, each one pair; every lambda^i is the square of
    a power of b = lambda^((n+1)/2)."""
    F = lam.field
    k = (n - 1) // 2
    first_entries = []
    for i in range(1, k + 1):
        first_entries.extend([lam ** i, lam ** (n - i)])
    first_entries.append(F.one())
    first = diagonal(F, first_entries)
    second_entries = []
    for i in range(1, k + 1):
        second_entries.extend([lam ** (n - i + 1), lam ** (i + 1)])
    second_entries.append(lam)
    second = diagonal(F, second_entries)
    assert first @ second == target
    f1 = _square_diag_blocks_cert(F, [lam ** i for i in range(1, k + 1)],
                                  f"prop4.8(odd,n={n})")
    f1 = direct_sum_factorization(f1, identity_factorization(F, 1))
    f1 = Factorization(first, f1.pairs, f1.route)
    assert f1.product() == first
    # second factor is permutation similar to the first
    P = find_diagonal_permutation(first, second)
    f2 = conjugate_factorization(Factorization(first, f1.pairs, f1.route), P)
    assert f2.target == second
    return concat_factorizations(target, [f1, f2])


def _scalar_even_gf5(lam, n, target):
    """GF(5), even n: -I_n as blocks of -I_2 (<= 3 pairs); 2I_n and 3I_n
    via the explicit 2I_4 identity (<= 4 pairs, n = 4k forced)."""
    F = lam.field
    one = F.one()
    if lam == -one:
        block = neg_identity(F)
        out = block
        for _ in range(n // 2 - 1):
            out = direct_sum_factorization(out, block)
        assert out.target == target
        return Factorization(target, out.pairs,
                             (f"lemma4.6(q=5,lambda=-1,n={n})",) + out.route)
    # lam is 2 or 3; 3I = (2I)^-1
    two = F.element(2)
    if lam == F.element(3):
        inv_cert = scalar_factor(two, n)
        out = invert_factorization(inv_cert)
        assert out.target == target
        return out
    assert lam == two and n % 4 == 0
    block4 = _two_i4_gf5(F)
    out = block4
    for _ in range(n // 4 - 1):
        out = direct_sum_factorization(out, block4)
    assert out.target == target
    return out


def _two_i4_gf5(F) -> Factorization:
    """2*I_4 = (B (+) B) C over GF(5) with B = diag(2, 3) and
    C = diag(1, -1, 1, -1); at most four pairs."""
    one = F.one()
    minus_one = -one
    B = diagonal(F, [F.element(2), F.element(3)])
    fB = factor_sl2(B)
    fBB = direct_sum_factorization(fB, fB)
    # C via D E similar to diag(1, -1, 1, -1)
    j2m = jordan_block(F, 2, minus_one)
    alpha_cert = factor_sl2(j2m)  # single pair (tr = -2 = 2 + 1^2)
    # D = [1] (+) (permutation of J_2(-1) (+) [1])
    perm = Matrix.from_ints(F, [[1, 0, 0], [0, 0, 1], [0, 1, 0]])
    inner = direct_sum_factorization(alpha_cert, identity_factorization(F, 1))
    inner = conjugate_factorization(inner, perm)
    fD = embed_factorization(inner, 1, 0)
    D = direct_sum_all([identity(F, 1),
                        Matrix.from_ints(F, [[-1, 0, 1], [0, 1, 0],
                                             [0, 0, -1]])])
    assert fD.target == D
    fE = embed_factorization(alpha_cert, 1, 1)
    G = D @ fE.target
    fG = concat_factorizations(G, [fD, fE])
    C = diagonal(F, [one, minus_one, one, minus_one])
    P = similarity_to_diagonal(G, C.diagonal())
    fC = conjugate_factorization(fG, P)
    assert fC.target == C
    target = diagonal(F, [F.element(2)] * 4)
    assert fBB.target @ C == target
    out = concat_factorizations(target, [fBB, fC],
                                ("lemma4.6(q=5,lambda=2)",))
    return out


def _scalar_even_bigfield(lam, n, target):
    """Even n, |F| > 2n + 1: at most three pairs, two when every odd
    power of lambda is a square (always in characteristic 2).

    With a^(2n) != 1 and d = a^2, the two diagonal factors with block
    entries (lam^(2i-1) d, lam^(2i-1) d^-1) and (lam^(2-2i) d^-1,
    lam^(2-2i) d) are each permutation similar to direct sums of
    diag(x, x^-1) blocks; the second factor's x values are all squares.
    """
    F = lam.field
    k = n // 2
    a = _power_free_witness(F, 2 * n)
    d = a * a
    dinv = d.inverse()
    b_entries = []
    c_entries = []
    for i in range(1, k + 1):
        s = lam ** (2 * i - 1)
        t = lam ** (2 - 2 * i)
        b_entries.extend([s * d, s * dinv])
        c_entries.extend([t * dinv, t * d])
    Bmat = diagonal(F, b_entries)
    Cmat = diagonal(F, c_entries)
    assert Bmat @ Cmat == target
    # C ~ blocks diag(y, y^-1) with y = lam^(2-2i) d^-1 = (lam^(1-i)/a)^2
    y_vals = [lam ** (2 - 2 * i) * dinv for i in range(1, k + 1)]
    c_sorted = diagonal(F, [e for y in y_vals for e in (y, y.inverse())])
    fC_sorted = _square_diag_blocks_cert(F, y_vals,
                                         f"prop5.3(n={n},a={a.token()})")
    assert fC_sorted.target == c_sorted
    PC = find_diagonal_permutation(c_sorted, Cmat)
    fC = conjugate_factorization(fC_sorted, PC)
    # B ~ blocks diag(x, x^-1) with x = lam^(2i-1) d, never scalar
    x_vals = [lam ** (2 * i - 1) * d for i in range(1, k + 1)]
    b_sorted = diagonal(F, [e for x in x_vals for e in (x, x.inverse())])
    blocks = [diagonal(F, [x, x.inverse()]) for x in x_vals]
    fB_sorted = _factor_sl2_blocks(blocks, f"prop5.3(blocks,n={n})")
    assert fB_sorted.target == b_sorted
    PB = find_diagonal_permutation(b_sorted, Bmat)
    fB = conjugate_factorization(fB_sorted, PB)
    return concat_factorizations(target, [fB, fC])


def _power_free_witness(F: FieldSpec, order: int) -> FieldElement:
    """First nonzero a (canonical order) with a^order != 1."""
    one = F.one()
    if not F.is_finite:
        return F.element(2)
    for a in F.nonzero_elements():
        if a ** order != one:
            return a
    raise UnsupportedFieldSize(f"every element satisfies x^{order} = 1")


def _scalar_even_general(lam, n, target):
    """Even n, |F| >= 4 (not 5, not big-field): at most four pairs via the
    odd/even power split; each diagonal SL_2 block through factor_sl2."""
    F = lam.field
    k = n // 2
    b_entries = []
    c_entries = []
    for i in range(1, k + 1):
        b_entries.extend([lam ** (2 * i - 1), lam ** (n - 2 * i + 1)])
        c_entries.extend([lam ** (2 - 2 * i), lam ** (2 * i)])
    Bmat = diagonal(F, b_entries)
    Cmat = diagonal(F, c_entries)
    assert Bmat @ Cmat == target
    b_blocks = [diagonal(F, [lam ** (2 * i - 1), lam ** (n - 2 * i + 1)])
                for i in range(1, k + 1)]
    fB = _factor_sl2_blocks(b_blocks, f"prop4.8(even,B,n={n})")
    assert fB.target == Bmat
    # C is permutation similar to I_2 (+) diag blocks of even powers
    c_blocks = [lam ** (2 * i) for i in range(1, k)]
    c_sorted_entries = [F.one(), F.one()]
    for c in c_blocks:
        c_sorted_entries.extend([c, c.inverse()])
    c_sorted = diagonal(F, c_sorted_entries)
    blocks = [identity(F, 2)] + \
        [diagonal(F, [c, c.inverse()]) for c in c_blocks]
    fC_sorted = _factor_sl2_blocks(blocks, f"prop4.8(even,C,n={n})")
    assert fC_sorted.target == c_sorted
    P = find_diagonal_permutation(c_sorted, Cmat)
    fC = conjugate_factorization(fC_sorted, P)
    return concat_factorizations(target, [fB, fC])


# -- nonscalar matrices -------------------------------------------------------------

def _reduced_threshold_met(F: FieldSpec, n: int) -> bool:
    if not F.is_finite:
        return True
    half = n // 2
    q = F.size
    if q in (2, 3, 5):
        return False
    if F.p == 2:
        return q >= 2 * half + 2
    minus_one_square = sqrt(-F.one()) is not None
    return q >= (4 * half + 5 if minus_one_square else 4 * half + 3)


def nonscalar_factor(A: Matrix) -> Factorization:
    """Nonscalar A in SL_n, n > 2, |F| >= 4: two pairs when the
    square-pair supply is large enough, otherwise at most four via
    unipotent splitting."""
    F = A.field
    n = A.n
    if A.is_scalar():
        raise ScalarInput("nonscalar route got a scalar matrix")
    if F.is_finite and F.size <= 3:
        raise UnsupportedFieldSize("|F| >= 4 required")
    if _reduced_threshold_met(F, n):
        return _nonscalar_two_pairs(A)
    return _nonscalar_unipotent_split(A)


def _nonscalar_two_pairs(A: Matrix) -> Factorization:
    """Prop-5.2-style route: split with a distinct all-square spectrum and
    factor both parts as single diagonal commutators."""
    F = A.field
    n = A.n
    k = n // 2
    pairing = square_class_pairing(F)
    alphas = []
    for pair in pairing.iter_pairs():
        alphas.append(pair)
        if len(alphas) == k:
            break
    if len(alphas) < k:
        raise UnsupportedFieldSize("not enough inverse square pairs")
    spectrum = []
    if n % 2 == 1:
        spectrum.append(F.one())
    for (a, ainv) in alphas:
        spectrum.extend([a, ainv])
    spectrum = tuple(spectrum)
    split = sourour_factor(A, spectrum, spectrum)
    parts = []
    for part in (split.b, split.c):
        P = diagonalize_known_spectrum(part, spectrum)
        blocks = [_diag_pair_cert(F, a) for (a, _) in alphas]
        cert = blocks[0]
        for c in blocks[1:]:
            cert = direct_sum_factorization(cert, c)
        if n % 2 == 1:
            cert = direct_sum_factorization(identity_factorization(F, 1), cert)
        assert cert.target == diagonal(F, spectrum)
        parts.append(conjugate_factorization(cert, P.inverse()))
    return concat_factorizations(
        A, parts, (split.route_tag(spectrum, spectrum),
                   f"prop5.2(n={n})"))


def _nonscalar_unipotent_split(A: Matrix) -> Factorization:
    """General route: A = B C with both parts unipotent; each part's
    Jordan blocks are certified separately and direct-summed."""
    F = A.field
    n = A.n
    ones = tuple([F.one()] * n)
    split = sourour_factor(A, ones, ones)
    parts = []
    for part in (split.b, split.c):
        jd = unipotent_jordan(part)
        block_certs = []
        for size in jd.partition:
            if size == 1:
                block_certs.append(identity_factorization(F, 1))
            elif size == 2:
                block_certs.append(factor_sl2(jordan_block(F, 2, F.one())))
            else:
                block_certs.append(jn1_factor(size, F))
        cert = block_certs[0]
        for c in block_certs[1:]:
            cert = direct_sum_factorization(cert, c)
        assert cert.target == jd.form
        parts.append(conjugate_factorization(cert, jd.transform.inverse()))
    return concat_factorizations(
        A, parts, (split.route_tag(ones, ones), f"prop4.5(n={n})"))


# -- top-level dispatcher ---------------------------------------------------------

def factor(A: Matrix) -> Factorization:
    """Certificate for any A in SL_n(F) covered by the constructive
    routes; pair count is bounded by promised_max_pairs(F, n)."""
    F = A.field
    n = A.n
    if A.det() != F.one():
        raise NotSLn("determinant is not 1")
    if n == 1:
        return identity_factorization(F, 1)
    if n == 2:
        out = factor_sl2(A)
    elif A.is_scalar():
        out = scalar_factor(A[0, 0], n)
    else:
        out = nonscalar_factor(A)
    bound = promised_max_pairs(F, n)
    assert out.pair_count() <= bound, \
        f"{out.pair_count()} pairs exceeds the promised bound {bound}"
    return out
