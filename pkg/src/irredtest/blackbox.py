"""Black-box zero tests and their combinators.

A BlackBox answers one question: is the hidden function zero at a point.
Everything downstream (sampling, exact counting, verdicts) only sees this
interface, so explicit polynomials, determinantal loci and discriminant
style constructions all plug into the same estimator.
"""

from .errors import (
    ArityMismatch,
    EmptyList,
    FieldMismatch,
    RangeError,
    UnsupportedSize,
)
from .fields import Field, extension_of, make_field
from .polynomials import SparsePolynomial, parse_poly


class BlackBox:
    """Pure zero-test oracle over field^n; safe to share between workers."""

    __slots__ = ("field", "n", "label", "_fn")

    def __init__(self, field: Field, n: int, fn, label="blackbox"):
        if n < 0:
            raise ArityMismatch(f"arity must be >= 0, got {n}")
        self.field = field
        self.n = n
        self.label = label
        self._fn = fn

    def is_zero_at(self, point) -> bool:
        if len(point) != self.n:
            raise ArityMismatch(f"point has {len(point)} coords, need {self.n}")
        return self._fn(point)

    def __repr__(self):
        return f"<blackbox {self.label} over {self.field.spec}, n={self.n}>"


def _coerce(obj) -> BlackBox:
    if isinstance(obj, BlackBox):
        return obj
    if isinstance(obj, SparsePolynomial):
        return from_poly(obj)
    raise TypeError(f"expected a BlackBox or SparsePolynomial, got {type(obj).__name__}")


def from_poly(f: SparsePolynomial, label=None) -> BlackBox:
    """Zero test of an explicit polynomial."""
    zero = f.field.zero
    return BlackBox(
        f.field,
        f.n,
        lambda pt: f.evaluate(pt) == zero,
        label or "poly",
    )


def product_bb(f, g) -> BlackBox:
    """Oracle for f*g: zero where either factor vanishes."""
    f, g = _coerce(f), _coerce(g)
    if f.field != g.field:
        raise FieldMismatch("factors live over different fields")
    if f.n != g.n:
        raise ArityMismatch(f"arity {f.n} vs {g.n}")
    return BlackBox(
        f.field,
        f.n,
        lambda pt: f.is_zero_at(pt) or g.is_zero_at(pt),
        f"product({f.label}, {g.label})",
    )


def intersection_bb(boxes) -> BlackBox:
    """Oracle for the common zero set of all the given boxes."""
    boxes = [_coerce(b) for b in boxes]
    if not boxes:
        raise EmptyList("intersection of zero oracles")
    first = boxes[0]
    for b in boxes[1:]:
        if b.field != first.field:
            raise FieldMismatch("oracles live over different fields")
        if b.n != first.n:
            raise ArityMismatch(f"arity {first.n} vs {b.n}")
    return BlackBox(
        first.field,
        first.n,
        lambda pt: all(b.is_zero_at(pt) for b in boxes),
        f"intersection[{len(boxes)}]",
    )


def substitute_bb(target, maps) -> BlackBox:
    """Pull a zero oracle back along a polynomial map A^m -> A^n.

    `maps` gives one coordinate polynomial (in x1..xm) per input of the
    target oracle.
    """
    target = _coerce(target)
    maps = list(maps)
    if not maps:
        raise EmptyList("substitution needs at least one coordinate map")
    if len(maps) != target.n:
        raise ArityMismatch(
            f"target takes {target.n} inputs, got {len(maps)} coordinate maps"
        )
    m = maps[0].n
    for g in maps:
        if not isinstance(g, SparsePolynomial):
            raise TypeError("coordinate maps must be SparsePolynomial")
        if g.field != target.field:
            raise FieldMismatch("coordinate maps live over a different field")
        if g.n != m:
            raise ArityMismatch("coordinate maps disagree on source arity")
    return BlackBox(
        target.field,
        m,
        lambda pt: target.is_zero_at(tuple(g.evaluate(pt) for g in maps)),
        f"substitute({target.label})",
    )


# ---------------------------------------------------------------------------
# polynomial matrices and rank loci

class PolyMatrix:
    """r x c matrix of polynomials over one field context, r <= c."""

    __slots__ = ("field", "n", "rows", "cols", "entries")

    def __init__(self, field: Field, n: int, entries):
        entries = tuple(tuple(row) for row in entries)
        if not entries or not entries[0]:
            raise EmptyList("matrix needs at least one entry")
        rows, cols = len(entries), len(entries[0])
        if rows > cols:
            raise RangeError(f"matrix must be wide: rows {rows} > cols {cols}")
        for row in entries:
            if len(row) != cols:
                raise RangeError("ragged matrix rows")
            for f in row:
                if f.field != field:
                    raise FieldMismatch("matrix entry over a different field")
                if f.n != n:
                    raise ArityMismatch("matrix entry with mismatched arity")
        self.field = field
        self.n = n
        self.rows = rows
        self.cols = cols
        self.entries = entries

    def values_at(self, point):
        return [[f.evaluate(point) for f in row] for row in self.entries]


def matrix_rank(field: Field, rows) -> int:
    """Rank of a matrix of field elements by Gaussian elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    zero = field.zero
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        piv = None
        for r in range(rank, nrows):
            if m[r][col] != zero:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = field.inv(m[rank][col])
        prow = m[rank]
        for j in range(col, ncols):
            prow[j] = field.mul(prow[j], inv)
        for r in range(rank + 1, nrows):
            factor = m[r][col]
            if factor != zero:
                mr = m[r]
                for j in range(col, ncols):
                    mr[j] = field.sub(mr[j], field.mul(factor, prow[j]))
        rank += 1
    return rank


def det_rank_bb(matrix: PolyMatrix) -> BlackBox:
    """Oracle for the locus where the matrix drops below full row rank."""
    r = matrix.rows
    field = matrix.field
    return BlackBox(
        field,
        matrix.n,
        lambda pt: matrix_rank(field, matrix.values_at(pt)) < r,
        f"rank_below({r}x{matrix.cols})",
    )


# ---------------------------------------------------------------------------
# matrix files

def parse_matrix_text(text: str) -> PolyMatrix:
    """Parse the matrix exchange format.

    First non-comment line: `rows cols nvars fieldspec`.  Then rows*cols
    polynomial lines in row-major order.  Blank lines and lines starting
    with '#' are skipped.
    """
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not lines:
        raise RangeError("empty matrix file")
    head = lines[0].split()
    if len(head) != 4:
        raise RangeError(f"header must be 'rows cols nvars fieldspec', got {lines[0]!r}")
    try:
        rows, cols, nvars = int(head[0]), int(head[1]), int(head[2])
    except ValueError:
        raise RangeError(f"bad matrix header {lines[0]!r}") from None
    field = make_field(head[3])
    body = lines[1:]
    if len(body) != rows * cols:
        raise RangeError(
            f"expected {rows * cols} polynomial lines, found {len(body)}"
        )
    polys = [parse_poly(ln, field, nvars) for ln in body]
    entries = [polys[i * cols : (i + 1) * cols] for i in range(rows)]
    return PolyMatrix(field, nvars, entries)


def load_poly_matrix(path) -> PolyMatrix:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix_text(fh.read())


# A wide matrix of linear forms on A^5 whose rank-deficiency locus is a
# fixed space curve; ships as a worked example for rank oracles.  Entries
# are row-major, three rows of five.
CURVE_MATRIX_ENTRIES = (
    ("x1+x2-x4-x5", "-x1-x3+x4+x5", "-x1-x3-x4-x5", "-x2-x3-x4+x5", "-x1+x2-x3-x4-x5"),
    ("x1-x2-x3-x5", "x1-x2-x3-x4+x5", "-x1-x2-x4-x5", "-x2-x3", "-x1+x3-x4+x5"),
    ("-x1+x4+x5", "-x1+x2-x3+x4+x5", "-x2+x5", "-x2+x3", "x1-x2+x3+x4+x5"),
)


def curve_determinantal_matrix(field: Field) -> PolyMatrix:
    """The shipped 3x5 space curve example, parsed over `field`."""
    entries = [
        [parse_poly(s, field, 5) for s in row] for row in CURVE_MATRIX_ENTRIES
    ]
    return PolyMatrix(field, 5, entries)


# ---------------------------------------------------------------------------
# singular ternary forms

def ternary_monomials(d: int):
    """Exponent triples (a, b, c) with a+b+c = d, lex descending."""
    if d < 0:
        raise RangeError(f"degree must be >= 0, got {d}")
    return [
        (a, b, d - a - b) for a in range(d, -1, -1) for b in range(d - a, -1, -1)
    ]


class _CurveStage:
    """Precomputed evaluation tables over one extension of the base field."""

    __slots__ = ("ext", "packed_columns", "values", "scalars")

    def __init__(self, ext, packed_columns, values, scalars):
        self.ext = ext
        self.packed_columns = packed_columns
        self.values = values
        self.scalars = scalars


def _projective_points(E):
    els = E.elements()
    one, zero = E.one, E.zero
    pts = []
    for a in els:
        for b in els:
            pts.append((one, a, b))
    for b in els:
        pts.append((zero, one, b))
    pts.append((zero, zero, one))
    return pts


def _build_stage(field, e, mons, work_cap, packed):
    E, embed = extension_of(field, e, work_cap=work_cap)
    p = field.p
    pts = _projective_points(E)
    int_table = [E.from_int(s) for s in range(p)]
    d = max(sum(m) for m in mons)
    rows = []
    for (x, y, z) in pts:
        powx, powy, powz = [E.one], [E.one], [E.one]
        for pow_row, coord in ((powx, x), (powy, y), (powz, z)):
            acc = E.one
            for _ in range(d):
                acc = E.mul(acc, coord)
                pow_row.append(acc)
        row = []
        for (a, b, c) in mons:
            v = E.mul(E.mul(powx[a], powy[b]), powz[c])
            row.append(
                (
                    v,
                    _partial(E, int_table, a, powx, powy, powz, b, c, p),
                    _partial(E, int_table, b, powy, powx, powz, a, c, p),
                    _partial(E, int_table, c, powz, powx, powy, a, b, p),
                )
            )
        rows.append(row)
    if packed:
        bits = (E.q - 1).bit_length()
        idx = E.index_of
        columns = []
        for j in range(len(mons)):
            col = []
            for row in rows:
                v0, v1, v2, v3 = row[j]
                col.append(
                    idx(v0)
                    | (idx(v1) << bits)
                    | (idx(v2) << (2 * bits))
                    | (idx(v3) << (3 * bits))
                )
            columns.append(col)
        return _CurveStage(E, columns, None, None)
    scalars = {a: embed(a) for a in field.elements()}
    return _CurveStage(E, None, [tuple(r) for r in rows], scalars)


def _partial(E, int_table, exp, pow_main, pow_o1, pow_o2, e1, e2, p):
    # derivative factor exp * main^(exp-1) * others, in characteristic p
    s = exp % p
    if exp == 0 or s == 0:
        return E.zero
    v = E.mul(E.mul(pow_main[exp - 1], pow_o1[e1]), pow_o2[e2])
    if s == 1:
        return v
    return E.mul(int_table[s], v)


def singular_curve_bb(d: int, field: Field, ext_bound=None, work_cap=10_000_000) -> BlackBox:
    """Oracle on coefficient vectors of ternary degree-d forms that answers
    whether the projective plane curve f = 0 has a singular point.

    A form is flagged when f and its three partials share a projective zero
    over some extension of degree e <= ext_bound; intersection bounds put
    every singular point of a degree-d curve within degree (d-1)^2, which is
    the default bound.  The zero form counts as singular.  Points are scanned
    over the smallest extensions first.
    """
    if d < 1:
        raise RangeError(f"form degree must be >= 1, got {d}")
    if ext_bound is None:
        ext_bound = max(1, (d - 1) ** 2)
    if ext_bound < 1:
        raise RangeError(f"extension bound must be >= 1, got {ext_bound}")
    if field.q ** (3 * ext_bound) > work_cap:
        raise UnsupportedSize(
            f"q^(3*ext_bound) = {field.q}^{3 * ext_bound} exceeds the work cap {work_cap}"
        )
    mons = ternary_monomials(d)
    m = len(mons)
    packed = field.q == 2
    stages = [
        _build_stage(field, e, mons, work_cap, packed)
        for e in range(1, ext_bound + 1)
    ]
    zero = field.zero

    def probe(coeffs):
        if len(coeffs) != m:
            raise ArityMismatch(f"need {m} coefficients for degree {d}, got {len(coeffs)}")
        active = [(j, c) for j, c in enumerate(coeffs) if c != zero]
        if not active:
            return True
        if packed:
            for stage in stages:
                columns = stage.packed_columns
                acc = None
                own = False
                for j, _ in active:
                    col = columns[j]
                    if acc is None:
                        acc = col
                    elif own:
                        for i, y in enumerate(col):
                            acc[i] ^= y
                    else:
                        acc = [x ^ y for x, y in zip(acc, col)]
                        own = True
                if 0 in acc:
                    return True
            return False
        for stage in stages:
            E = stage.ext
            ezero = E.zero
            emul, eadd = E.mul, E.add
            weights = [(j, stage.scalars[c]) for j, c in active]
            for row in stage.values:
                s0 = s1 = s2 = s3 = ezero
                for j, w in weights:
                    v0, v1, v2, v3 = row[j]
                    s0 = eadd(s0, emul(w, v0))
                    s1 = eadd(s1, emul(w, v1))
                    s2 = eadd(s2, emul(w, v2))
                    s3 = eadd(s3, emul(w, v3))
                if s0 == ezero and s1 == ezero and s2 == ezero and s3 == ezero:
                    return True
        return False

    # arity is the coefficient count: the oracle consumes coefficient
    # vectors listed in ternary_monomials(d) order
    return BlackBox(field, m, probe, f"singular_ternary(d={d}, ext<={ext_bound})")
