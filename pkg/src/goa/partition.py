"""Partitions of the powerset and their algebra: strong-regularity
axioms, coefficient matrices, upward counts, closure under the lattice
operators, structure constants, and block merging.

A partition is strongly regular when (1) each block is size-homogeneous,
(2) the complements of each block form a block, and (3) for every block
pair (i, j) the number of members of block j inside a member of block i
does not depend on the chosen member.  The downward counts form the
coefficient matrix; it doubles as the matrix of comp . ell . comp on the
block basis, and that identification is cross-checked, not assumed.
"""

import re
import warnings
from dataclasses import dataclass
from fractions import Fraction

from goa.errors import InputError, VerificationFailure
from goa.linalg import mat_inverse, mat_pow
from goa.operators import complementation, derivation, ell_power
from goa.poly import EPS, P, Poly
from goa.subsets import GroundSet, format_subset, parse_subset, popcount, submasks


class Partition:
    """Blocks of masks in canonical order: ascending (member size, smallest
    member); members ascending.  block_of maps every mask to its block."""

    __slots__ = ("g", "blocks", "block_of")

    def __init__(self, g, blocks, block_of):
        self.g = g
        self.blocks = blocks
        self.block_of = block_of

    @classmethod
    def from_blocks(cls, g: GroundSet, blocks):
        seen = [False] * g.size
        cleaned = []
        for block in blocks:
            members = sorted(set(block))
            if not members:
                raise InputError("empty block")
            for m in members:
                if not 0 <= m < g.size:
                    raise InputError(f"mask {m} out of range for n={g.n}")
                if seen[m]:
                    raise InputError(f"subset {format_subset(m)} appears in two blocks")
                seen[m] = True
            cleaned.append(tuple(members))
        missing = next((m for m in range(g.size) if not seen[m]), None)
        if missing is not None:
            raise InputError(f"partition does not cover subset {format_subset(missing)}")
        cleaned.sort(key=lambda b: (min(popcount(m) for m in b), b[0]))
        block_of = [0] * g.size
        for i, block in enumerate(cleaned):
            for m in block:
                block_of[m] = i
        return cls(g, tuple(cleaned), tuple(block_of))

    def __len__(self):
        return len(self.blocks)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.g == other.g and self.blocks == other.blocks

    def __hash__(self):
        return hash((self.g, self.blocks))

    def member_size(self, i):
        """Common member cardinality of block i (None if mixed)."""
        sizes = {popcount(m) for m in self.blocks[i]}
        return sizes.pop() if len(sizes) == 1 else None

    def complement_block(self, i):
        """Index j such that the complements of block i are exactly block j, else None."""
        full = self.g.full_mask
        comps = sorted(m ^ full for m in self.blocks[i])
        j = self.block_of[comps[0]]
        return j if list(self.blocks[j]) == comps else None

    def block_poly(self, i) -> Poly:
        return Poly.block_sum(self.g, self.blocks[i])

    def refines(self, other) -> bool:
        """Every block of self lies inside one block of other."""
        return all(len({other.block_of[m] for m in b}) == 1 for b in self.blocks)


@dataclass
class SrpReport:
    size_homogeneous: bool
    complement_closed: bool
    counts_constant: bool
    witness: tuple = None          # first failing axiom's witness
    comp_map: tuple = None         # c(i) per block, when axiom 2 holds
    counts: tuple = None           # downward-count matrix, when axiom 3 holds

    @property
    def ok(self):
        return self.size_homogeneous and self.complement_closed and self.counts_constant

    def lines(self):
        out = [
            f"axiom-1 size-homogeneous: {self.size_homogeneous}",
            f"axiom-2 complement-closed: {self.complement_closed}",
            f"axiom-3 constant-counts: {self.counts_constant}",
        ]
        if self.witness:
            out.append("witness: " + " ".join(str(w) for w in self.witness))
        return out


def _downward_profile(p: Partition, mask):
    """Count of members of each block lying inside mask."""
    row = [0] * len(p.blocks)
    for sub in submasks(mask):
        row[p.block_of[sub]] += 1
    return row


def verify_strongly_regular(p: Partition) -> SrpReport:
    """All three axioms evaluated independently; the witness is the first
    failing axiom's counterexample.  Counts are attached only when all
    axioms hold (they are block-constant exactly then)."""
    witnesses = []

    size_ok = True
    for i, block in enumerate(p.blocks):
        if p.member_size(i) is None:
            size_ok = False
            a, b = min(block, key=popcount), max(block, key=popcount)
            witnesses.append((1, ("axiom-1", i, format_subset(a), format_subset(b))))
            break

    comp_map = []
    comp_ok = True
    for i in range(len(p.blocks)):
        j = p.complement_block(i)
        if j is None:
            comp_ok = False
            witnesses.append((2, ("axiom-2", i)))
            break
        comp_map.append(j)

    counts_ok = True
    rows = {}
    for i, block in enumerate(p.blocks):
        first = _downward_profile(p, block[0])
        for a in block[1:]:
            other = _downward_profile(p, a)
            if other != first:
                j = next(jj for jj in range(len(first)) if first[jj] != other[jj])
                witnesses.append((3, ("axiom-3", i, j,
                                      format_subset(block[0]), format_subset(a),
                                      first[j], other[j])))
                counts_ok = False
                break
        if not counts_ok:
            break
        rows[i] = first

    ok = size_ok and comp_ok and counts_ok
    return SrpReport(
        size_ok, comp_ok, counts_ok,
        witness=min(witnesses)[1] if witnesses else None,
        comp_map=tuple(comp_map) if comp_ok else None,
        counts=tuple(tuple(rows[i]) for i in range(len(p.blocks))) if ok else None,
    )


@dataclass(frozen=True)
class CoeffMatrix:
    """entries[i][j] = number of members of block j inside a member of block i."""

    entries: tuple
    member_sizes: tuple   # common member cardinality per block
    orbit_sizes: tuple    # number of members per block
    comp_map: tuple

    @property
    def s(self):
        return len(self.entries)

    def lines(self):
        out = [f"blocks: {self.s}"]
        out.append("sizes: " + " ".join(map(str, self.member_sizes)))
        out.append("orbit-sizes: " + " ".join(map(str, self.orbit_sizes)))
        out.append("complement-map: " + " ".join(map(str, self.comp_map)))
        for row in self.entries:
            out.append(" ".join(map(str, row)))
        return out


def coeff_matrix(p: Partition, report: SrpReport = None) -> CoeffMatrix:
    """Downward-count matrix of a strongly regular partition, cross-checked
    against the operator comp . ell . comp expressed on the block basis."""
    report = report or verify_strongly_regular(p)
    if not report.ok:
        raise InputError("coefficient matrix requires a strongly regular partition")
    m = CoeffMatrix(
        entries=report.counts,
        member_sizes=tuple(p.member_size(i) for i in range(len(p.blocks))),
        orbit_sizes=tuple(len(b) for b in p.blocks),
        comp_map=report.comp_map,
    )
    # comp . ell . comp sends p_A to the sum of p_C over supersets C of A;
    # on the block basis its column i must read off column i of the counts.
    for i in range(len(p.blocks)):
        image = complementation(ell_power(1, complementation(p.block_poly(i))))
        expected = Poly(p.g, P, [m.entries[p.block_of[c]][i] for c in p.g.masks()])
        if image != expected:
            raise VerificationFailure(
                f"coefficient matrix disagrees with comp.ell.comp on block {i}")
    return m


def upward_count(p: Partition, i: int, j: int, matrix: CoeffMatrix = None) -> int:
    """Members of block j containing a member of block i; checked constant
    and equal to both closed forms (orbit-size ratio and complement form)."""
    matrix = matrix or coeff_matrix(p)
    direct = None
    members_j = p.blocks[j]
    for a in p.blocks[i]:
        c = sum(1 for b in members_j if a & b == a)
        if direct is None:
            direct = c
        elif c != direct:
            raise VerificationFailure(f"upward count not constant on block pair ({i},{j})")
    ratio = Fraction(matrix.orbit_sizes[j] * matrix.entries[j][i], matrix.orbit_sizes[i])
    comp_form = matrix.entries[matrix.comp_map[i]][matrix.comp_map[j]]
    if not (direct == ratio == comp_form):
        raise VerificationFailure(
            f"upward count mismatch on ({i},{j}): direct {direct}, "
            f"ratio {ratio}, complement form {comp_form}")
    return direct


@dataclass
class GoaReport:
    closed: bool
    failure: tuple = None     # (operation, blocks involved)
    witness_poly: object = None  # the image that left the span

    def lines(self):
        out = [f"closed-under-derivation-complementation-multiplication: {self.closed}"]
        if self.failure:
            out.append("first failure: " + " ".join(str(x) for x in self.failure))
        if self.witness_poly is not None:
            from goa.poly import format_poly
            out.append("witness polynomial:")
            out.extend("  " + line for line in format_poly(self.witness_poly).splitlines())
        return out


def _constant_on_blocks(p: Partition, q: Poly):
    vals = q.to_basis(EPS).coeffs
    for i, block in enumerate(p.blocks):
        v0 = vals[block[0]]
        for m in block[1:]:
            if vals[m] != v0:
                return i
    return None


def verify_goa_closure(p: Partition) -> GoaReport:
    """Is the span of the block indicator-sums closed under derivation,
    complementation, and pairwise multiplication?

    Membership is tested in the idempotent basis: a polynomial lies in
    the span of evaluation-constant functions iff its idempotent
    coefficients are constant on every block.  Usable on arbitrary
    partitions; strong regularity is not assumed.
    """
    polys = [p.block_poly(i) for i in range(len(p.blocks))]
    for i, q in enumerate(polys):
        image = derivation(q)
        bad = _constant_on_blocks(p, image)
        if bad is not None:
            return GoaReport(False, ("derivation", i, bad), image)
        image = complementation(q)
        bad = _constant_on_blocks(p, image)
        if bad is not None:
            return GoaReport(False, ("complementation", i, bad), image)
    for i in range(len(polys)):
        for j in range(i, len(polys)):
            image = polys[i] * polys[j]
            bad = _constant_on_blocks(p, image)
            if bad is not None:
                return GoaReport(False, ("multiplication", i, j, bad), image)
    return GoaReport(True)


def structure_constants(p: Partition, i: int, j: int, matrix: CoeffMatrix = None):
    """Coefficients of (block i poly) * (block j poly) on the block basis,
    by Moebius inversion over the coefficient matrix, cross-checked against
    the direct product."""
    matrix = matrix or coeff_matrix(p)
    s = matrix.s
    ent, sizes = matrix.entries, matrix.member_sizes
    moebius = []
    for k in range(s):
        total = 0
        for l in range(s):
            term = ent[k][l] * ent[l][i] * ent[l][j]
            if term:
                total += (-1) ** (sizes[k] - sizes[l]) * term
        moebius.append(total)
    product = p.block_poly(i) * p.block_poly(j)
    direct = []
    for k, block in enumerate(p.blocks):
        v0 = product.coeffs[block[0]]
        if any(product.coeffs[m] != v0 for m in block[1:]):
            raise VerificationFailure(
                f"product of blocks ({i},{j}) is not constant on block {k}")
        direct.append(v0)
    if direct != moebius:
        raise VerificationFailure(
            f"structure constants disagree for ({i},{j}): "
            f"moebius {moebius} vs direct {direct}")
    return tuple(moebius)


def mnukhin_check(p: Partition, m: int, matrix: CoeffMatrix = None) -> bool:
    """Entrywise power law of the coefficient matrix: the (i,j) entry of
    M^m equals m^(size_i - size_j) times the (i,j) entry of M."""
    if m == 0:
        raise InputError("power must be a nonzero integer")
    matrix = matrix or coeff_matrix(p)
    base = [list(row) for row in matrix.entries]
    power = mat_pow(base if m > 0 else mat_inverse(base), abs(m))
    sizes = matrix.member_sizes
    for i in range(matrix.s):
        for j in range(matrix.s):
            expected = matrix.entries[i][j] * Fraction(m) ** (sizes[i] - sizes[j]) \
                if matrix.entries[i][j] else 0
            if power[i][j] != expected:
                raise VerificationFailure(
                    f"matrix power law fails at ({i},{j}) for m={m}: "
                    f"{power[i][j]} != {expected}")
    return True


def merge_blocks(p: Partition, i: int, j: int) -> Partition:
    if i == j:
        raise InputError("cannot merge a block with itself")
    if p.member_size(i) != p.member_size(j):
        warnings.warn("merging blocks of different member sizes", stacklevel=2)
    blocks = [list(b) for b in p.blocks]
    merged = blocks[i] + blocks[j]
    rest = [b for k, b in enumerate(blocks) if k not in (i, j)]
    return Partition.from_blocks(p.g, rest + [merged])


def partition_from_polys(polys) -> Partition:
    """Classes of the relation 'every given polynomial takes equal values'."""
    if not polys:
        raise InputError("need at least one polynomial")
    g = polys[0].g
    if any(q.g != g for q in polys):
        raise InputError("polynomials live on different ground sets")
    groups = {}
    for mask in g.masks():
        key = tuple(Fraction(q.evaluate(mask)) for q in polys)
        groups.setdefault(key, []).append(mask)
    return Partition.from_blocks(g, list(groups.values()))


# ---------------------------------------------------------------------------
# Partition file format
# ---------------------------------------------------------------------------

def parse_partition_text(text: str) -> Partition:
    """Line 1 'n <int>'; each later nonempty line one block, members
    separated by ' ; ', each in subset syntax.  '#' starts a comment."""
    g = None
    blocks = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if g is None:
            m = re.fullmatch(r"n\s+(\d+)", line)
            if not m:
                raise InputError(f"line {lineno}: expected 'n <int>' header, got {line!r}")
            try:
                g = GroundSet(int(m.group(1)))
            except InputError as exc:
                raise InputError(f"line {lineno}: {exc}") from None
            continue
        members = []
        for part in line.split(";"):
            try:
                members.append(parse_subset(part, g))
            except InputError as exc:
                raise InputError(f"line {lineno}: {exc}") from None
        blocks.append(members)
    if g is None:
        raise InputError("partition file has no 'n <int>' header")
    return Partition.from_blocks(g, blocks)


def format_partition(p: Partition) -> str:
    lines = [f"n {p.g.n}"]
    for block in p.blocks:
        lines.append(" ; ".join(format_subset(m) for m in block))
    return "\n".join(lines)
