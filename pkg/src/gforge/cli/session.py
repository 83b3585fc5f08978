"""The interpreter: evaluates parsed statements against a session of bindings."""

from __future__ import annotations

import random
import sys
import time
from fractions import Fraction
from numbers import Integral, Rational

from .. import idealops, special, zerodim
from ..coeff import QQ, Field, PrimeField, TwinFloatField
from ..errors import Cancelled, FieldNotSupported, ParseError
from ..expr import parse_polynomial
from ..gb import CancelToken, Ideal, ProgressSink, normal_form, reset_sink, reset_token, set_sink, set_token
from ..idealops import MonomialIdeal, hilbert_series, leading_term_ideal
from ..modrecon import ResidueModulus, crt_combine, crt_poly, rat_reconstruct_poly
from ..order import OrderMatrix, elim_mat
from ..poly import PolyAlgebraHom, PolyRing, Polynomial, map_polynomial
from .parser import CommandSyntaxError, parse_statement, split_statements, tokenize
from .values import (
    IndetFamily,
    Matrix,
    QuotientRing,
    Record,
    Seconds,
    Text,
    ZZMarker,
    indent,
    normalize_number,
    show,
    type_name,
)

MAX_INT_POWER_BITS = 1 << 22
MAX_POLY_POWER = 10_000


class CommandError(Exception):
    """A type or usage error detected by the interpreter."""

    kind = "TypeError"


class UnknownName(CommandError):
    kind = "NameError"


def _is_num(x):
    return isinstance(x, (Integral, Rational)) and not isinstance(x, bool)


def _line_col(text, pos):
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


class Session:
    """Current ring, bindings and verbosity; one command executes at a time."""

    def __init__(self, out=None, err=None, verbosity=0, seed=None, timeout=None):
        self.out = out if out is not None else sys.stdout
        self.err = err if err is not None else sys.stderr
        self.ring = None
        self.bindings = {}
        self.sink = ProgressSink(int(verbosity), emit=self._diag)
        self.rng = random.Random(seed)
        self.timeout = timeout
        self.token = None
        self.errors = 0
        self._locals = []
        self._first_line = 1

    # -- plumbing ---------------------------------------------------------------
    def _diag(self, line):
        self.err.write(line + "\n")
        self.err.flush()

    def cancel(self):
        """Ask the running command to stop at its next checkpoint; a no-op when idle."""
        token = self.token
        if token is not None:
            token.cancel()

    @property
    def busy(self):
        return self.token is not None

    def report(self, source, text, pos, kind, message):
        line, col = _line_col(text, pos)
        line += self._first_line - 1
        self.err.write(f"{source}:{line}:{col}: {kind}: {message}\n")
        self.err.flush()

    def execute(self, text, source="<input>", first_line=1):
        """Run every statement of ``text``; returns the number of failed statements.

        ``first_line`` is the line number of the first line of ``text`` in ``source``.
        """
        self._first_line = first_line
        failed = 0
        for toks, start, _ in split_statements(tokenize(text), len(text)):
            end = toks[-1].pos + 1
            try:
                node = parse_statement(toks, end)
            except CommandSyntaxError as exc:
                self.report(source, text, exc.pos, "SyntaxError", exc.message)
                failed += 1
                continue
            if not self.run_statement(node, text, source):
                failed += 1
        self.errors += failed
        return failed

    def run_statement(self, node, text="", source="<input>"):
        token = CancelToken(self.timeout)
        self.token = token
        th = set_token(token)
        sh = set_sink(self.sink)
        self._locals = []
        try:
            out = self.statement(node)
        except Cancelled:
            why = f"timed out after {self.timeout} s" if token.deadline is not None and time.monotonic() >= token.deadline else "interrupted"
            self.report(source, text, node[-1], "Cancelled", f"computation {why}; nothing was changed")
            return False
        except CommandSyntaxError as exc:
            self.report(source, text, exc.pos, "SyntaxError", exc.message)
            return False
        except _Located as exc:
            err = exc.error
            kind = getattr(err, "kind", None) or type(err).__name__
            self.report(source, text, exc.pos, kind, _message(err))
            return False
        except RecursionError:
            self.report(source, text, node[-1], "RecursionError", "expression nested too deeply")
            return False
        except Exception as err:  # the session must survive anything a command does
            kind = getattr(err, "kind", None) or type(err).__name__
            self.report(source, text, node[-1], kind, _message(err))
            return False
        finally:
            reset_sink(sh)
            reset_token(th)
            self.token = None
        if out is not None:
            self.out.write(out + "\n")
            self.out.flush()
        return True

    # -- statements ---------------------------------------------------------------
    def statement(self, node):
        kind = node[0]
        if kind == "use":
            ref = node[1]
            if ref[0] == "name":
                ring = self.lookup(ref[1], ref[2])
                if not isinstance(ring, PolyRing):
                    raise _Located(CommandError(f"{ref[1]} is not a polynomial ring"), ref[2])
            elif ref[0] == "ringdef":
                ring = self.build_ring(ref[2])
                self.bind(ref[1], ring, ref[3])
            else:
                ring = self.build_ring(ref)
            self.ring = ring
            return None
        if kind == "ringdef":
            ring = self.build_ring(node[2])
            self.bind(node[1], ring, node[3])
            return None
        if kind == "assign":
            value = self.eval(node[2])
            self.bind(node[1], value, node[3])
            return None
        return show(self.eval(node[1]))

    def bind(self, name, value, pos):
        if self.ring is not None and self.ring.has_indet(name):
            raise _Located(CommandError(f"cannot assign to {name}, an indeterminate of the current ring"), pos)
        if name in ("QQ", "ZZ") or name in BUILTINS:
            raise _Located(CommandError(f"cannot assign to the reserved name {name}"), pos)
        self.bindings[name] = value

    def build_ring(self, spec):
        _, fnode, indets, order, pos = spec
        if fnode[0] == "QQ":
            field = QQ
        elif fnode[0] == "ZZ":
            p = self.eval(fnode[1])
            if not isinstance(p, int) or isinstance(p, bool):
                raise _Located(CommandError("the characteristic must be an integer"), pos)
            field = PrimeField(p)
        else:
            field = self.eval(fnode)
        if isinstance(field, QuotientRing):
            raise _Located(FieldNotSupported("coefficients in a quotient ring are not supported"), pos)
        if not isinstance(field, Field):
            raise _Located(CommandError(f"{show(field)} is not a coefficient field"), pos)
        names = []
        for name, ranges in indets:
            if not ranges:
                names.append(name)
                continue
            spans = []
            for lo, hi in ranges:
                a, b = self.eval(lo), self.eval(hi)
                if not (isinstance(a, int) and isinstance(b, int)):
                    raise _Located(CommandError("index ranges must be integers"), pos)
                spans.append(range(a, b + 1))
            names.extend(_index_names(name, spans))
        try:
            return PolyRing(field, names, order)
        except ValueError as exc:
            raise _Located(exc, pos) from None

    # -- names --------------------------------------------------------------------
    def lookup(self, name, pos):
        for scope in reversed(self._locals):
            if name in scope:
                return scope[name]
        ring = self.ring
        if ring is not None and ring.has_indet(name):
            return ring.indet(name)
        if name in self.bindings:
            return self.bindings[name]
        if name == "QQ":
            return QQ
        if name == "ZZ":
            return ZZMarker()
        if ring is not None and any(s.startswith(name + "[") for s in ring.names):
            return IndetFamily(ring, name)
        if name in BUILTINS:
            raise _Located(UnknownName(f"{name} is a function; call it as {name}(...)"), pos)
        raise _Located(UnknownName(f"undefined name {name}"), pos)

    def current_ring(self):
        if self.ring is None:
            raise CommandError("no current ring; start with `use QQ[x,y,z];`")
        return self.ring

    # -- expressions ----------------------------------------------------------------
    def eval(self, node):
        try:
            return self._eval(node)
        except (_Located, Cancelled, CommandSyntaxError, RecursionError):
            raise
        except Exception as exc:
            raise _Located(exc, node[-1]) from None

    def _eval(self, node):
        kind = node[0]
        if kind == "num":
            return node[1]
        if kind == "str":
            return node[1]
        if kind == "name":
            return self.lookup(node[1], node[2])
        if kind == "neg":
            v = self.eval(node[1])
            if _is_num(v) or isinstance(v, Polynomial):
                return -v
            raise CommandError(f"cannot negate a {type_name(v)}")
        if kind == "bin":
            return self.arith(node[1], self.eval(node[2]), self.eval(node[3]))
        if kind == "cmp":
            return self.compare(node[1], self.eval(node[2]), self.eval(node[3]))
        if kind == "range":
            lo, hi = self.eval(node[1]), self.eval(node[2])
            if not (isinstance(lo, int) and isinstance(hi, int)) or isinstance(lo, bool) or isinstance(hi, bool):
                raise CommandError("range bounds must be integers")
            if hi - lo > 10**7:
                raise CommandError("range too long")
            return list(range(lo, hi + 1))
        if kind == "list":
            return [self.eval(x) for x in node[1]]
        if kind == "comp":
            _, body, var, src, _ = node
            items = self.eval(src)
            if not isinstance(items, list):
                raise CommandError("a comprehension iterates over a list")
            out = []
            self._locals.append({})
            try:
                for x in items:
                    self._locals[-1][var] = x
                    out.append(self.eval(body))
            finally:
                self._locals.pop()
            return out
        if kind == "call":
            return self.call(node)
        if kind == "index":
            obj = self.eval(node[1])
            idx = [self.eval(a) for a in node[2]]
            return self.index(obj, idx)
        if kind == "field":
            obj = self.eval(node[1])
            name = node[2]
            if isinstance(obj, Record):
                if name not in obj.fields:
                    raise CommandError(f"record has no field {name}")
                return obj.fields[name]
            if isinstance(obj, ResidueModulus):
                if name == "modulus":
                    return obj.modulus
                if name == "residue":
                    return obj.residue_poly() if obj.is_poly else obj.residue
                raise CommandError(f"record has no field {name}")
            raise CommandError(f"a {type_name(obj)} has no fields")
        raise CommandError(f"cannot evaluate {kind}")

    def call(self, node):
        _, fn, argnodes, pos = node
        if fn[0] == "name":
            name = fn[1]
            bound = any(name in s for s in self._locals) or name in self.bindings
            if not bound and name in BUILTINS:
                args = [self.eval(a) for a in argnodes]
                if not _arity_ok(BUILTINS[name], args):
                    _arity_error(name)
                return BUILTINS[name](self, *args)
            if not bound and not (self.ring is not None and self.ring.has_indet(name)):
                raise _Located(UnknownName(f"unknown function {name}"), fn[2])
        f = self.eval(fn)
        args = [self.eval(a) for a in argnodes]
        if isinstance(f, PolyAlgebraHom):
            if len(args) != 1:
                raise CommandError("a ring homomorphism takes one argument")
            return _apply(f, args[0])
        raise CommandError(f"a {type_name(f)} is not callable")

    def index(self, obj, idx):
        if isinstance(obj, IndetFamily):
            if not all(isinstance(i, int) for i in idx):
                raise CommandError("indeterminate indices must be integers")
            return obj.get(idx)
        if isinstance(obj, (list, str, Matrix)):
            cur = obj
            for i in idx:
                seq = cur.rows if isinstance(cur, Matrix) else cur
                if not isinstance(i, int) or isinstance(i, bool):
                    raise CommandError("list indices must be integers")
                if not 1 <= i <= len(seq):
                    raise IndexError(f"index {i} out of range 1..{len(seq)}")
                cur = seq[i - 1]
            return cur
        raise CommandError(f"a {type_name(obj)} cannot be indexed")

    def arith(self, op, a, b):
        if op == "^":
            return self.power(a, b)
        if _is_num(a) and _is_num(b):
            if op == "+":
                return normalize_number(Fraction(a) + b) if not (isinstance(a, int) and isinstance(b, int)) else a + b
            if op == "-":
                return normalize_number(Fraction(a) - b) if not (isinstance(a, int) and isinstance(b, int)) else a - b
            if op == "*":
                return normalize_number(Fraction(a) * b) if not (isinstance(a, int) and isinstance(b, int)) else a * b
            if b == 0:
                raise ZeroDivisionError("division by zero")
            return normalize_number(Fraction(a) / Fraction(b))
        if isinstance(a, Polynomial) or isinstance(b, Polynomial):
            if isinstance(a, Polynomial) and isinstance(b, Polynomial) and a.ring != b.ring:
                raise CommandError(f"polynomials from different rings: {a.ring} and {b.ring}")
            if (_is_num(a) or isinstance(a, Polynomial)) and (_is_num(b) or isinstance(b, Polynomial)):
                if op == "+":
                    return a + b
                if op == "-":
                    return a - b
                if op == "*":
                    return a * b
                return self.divide(a, b)
        if isinstance(a, Ideal) and isinstance(b, Ideal) and op in "+*":
            return a + b if op == "+" else a * b
        if op == "*" and isinstance(b, Ideal) and (isinstance(a, Polynomial) or _is_num(a)):
            a, b = b, a
        if op == "*" and isinstance(a, Ideal) and (isinstance(b, Polynomial) or _is_num(b)):
            f = _coerce_poly(a.ring, b)
            return Ideal(a.ring, [g * f for g in a.gens])
        if isinstance(a, PolyRing) and isinstance(b, Ideal) and op == "/":
            if b.ring != a:
                raise CommandError("the ideal does not belong to that ring")
            return QuotientRing(a, b)
        if isinstance(a, ZZMarker) and op == "/" and isinstance(b, int):
            return PrimeField(b)
        if op == "*" and _is_num(a) and isinstance(b, list):
            return [self.arith("*", a, x) for x in b]
        if op in "+-" and isinstance(a, list) and isinstance(b, list) and len(a) == len(b):
            return [self.arith(op, x, y) for x, y in zip(a, b)]
        raise CommandError(f"cannot apply {op} to {type_name(a)} and {type_name(b)}")

    def divide(self, a, b):
        if isinstance(b, Polynomial):
            if b.is_zero():
                raise ZeroDivisionError("division by zero")
            if not b.is_constant():
                raise CommandError("division by a non-constant polynomial")
            if _is_num(a):
                a = b.ring.constant(a)
            b = b.constant_value()
        elif b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b

    def power(self, a, e):
        if not isinstance(e, int) or isinstance(e, bool):
            raise CommandError("exponents must be integers")
        if _is_num(a):
            if isinstance(a, int) and e >= 0:
                if abs(a) > 1 and e * a.bit_length() > MAX_INT_POWER_BITS:
                    raise CommandError("power too large")
                return a**e
            if e < 0 and a == 0:
                raise ZeroDivisionError("division by zero")
            base = Fraction(a)
            if abs(base.numerator) > 1 and abs(e) * base.numerator.bit_length() > MAX_INT_POWER_BITS:
                raise CommandError("power too large")
            if base.denominator > 1 and abs(e) * base.denominator.bit_length() > MAX_INT_POWER_BITS:
                raise CommandError("power too large")
            return normalize_number(base**e)
        if isinstance(a, Polynomial):
            if e < 0:
                raise CommandError("negative powers of polynomials are not defined")
            if e > MAX_POLY_POWER and not (a.is_constant() or len(a) == 1):
                raise CommandError("power too large")
            return a**e
        raise CommandError(f"cannot raise a {type_name(a)} to a power")

    def compare(self, op, a, b):
        if op in ("=", "<>"):
            if _is_num(a) and isinstance(b, Polynomial):
                a, b = b, a
            if isinstance(a, Polynomial) and _is_num(b):
                eq = (a - b).is_zero()
            elif isinstance(a, Polynomial) and isinstance(b, Polynomial) and a.ring != b.ring:
                raise CommandError("polynomials from different rings")
            else:
                eq = a == b
            return eq if op == "=" else not eq
        if not (_is_num(a) and _is_num(b)):
            raise CommandError(f"cannot compare {type_name(a)} and {type_name(b)} with {op}")
        return {"<": a < b, "<=": a <= b, ">": a > b, ">=": a >= b}[op]

    def seed(self):
        return self.rng.getrandbits(64)


class _Located(Exception):
    """Wraps an error with the source offset of the expression that raised it."""

    def __init__(self, error, pos):
        super().__init__(str(error))
        self.error = error
        self.pos = pos


def _message(err):
    if isinstance(err, ParseError):
        return err.message
    if isinstance(err, KeyError) and err.args:
        return str(err.args[0])
    return str(err) or type(err).__name__


def _index_names(stem, spans):
    out = [[]]
    for span in spans:
        out = [prefix + [i] for prefix in out for i in span]
    return [f"{stem}[{','.join(map(str, idx))}]" for idx in out]


def _apply(hom, x):
    if isinstance(x, list):
        return [hom(_coerce_poly(hom.src, v)) for v in x]
    return hom(_coerce_poly(hom.src, x))


def _coerce_poly(ring, v):
    if isinstance(v, Polynomial):
        return v
    if _is_num(v):
        return ring.constant(v)
    raise CommandError(f"expected a polynomial, got a {type_name(v)}")


# -- builtins ----------------------------------------------------------------------------


def _arity_ok(fn, args):
    lo, hi = fn.arity
    return lo <= len(args) <= hi


def _arity_error(name):
    lo, hi = BUILTINS[name].arity
    want = str(lo) if lo == hi else f"{lo} to {hi}"
    raise CommandError(f"{name} takes {want} argument(s)")


BUILTINS = {}


def builtin(name, lo, hi=None):
    def deco(fn):
        fn.arity = (lo, lo if hi is None else hi)
        BUILTINS[name] = fn
        return fn

    return deco


def _want(v, cls, what):
    if not isinstance(v, cls) or isinstance(v, bool) and cls is not bool:
        raise CommandError(f"expected {what}, got a {type_name(v)}")
    return v


def _ideal_of(v):
    if isinstance(v, QuotientRing):
        return v.ideal
    return _want(v, Ideal, "an ideal")


def _int(v, what="an integer"):
    if isinstance(v, bool) or not isinstance(v, int):
        raise CommandError(f"expected {what}, got a {type_name(v)}")
    return v


def _rows(v):
    if isinstance(v, Matrix):
        return v.rows
    if isinstance(v, list) and v and all(isinstance(r, list) for r in v):
        return Matrix(v).rows
    raise CommandError(f"expected a matrix, got a {type_name(v)}")


@builtin("ideal", 0, 10**6)
def b_ideal(s, *args):
    items = list(args[0]) if len(args) == 1 and isinstance(args[0], list) else list(args)
    rings = {g.ring for g in items if isinstance(g, Polynomial)}
    if len(rings) > 1:
        raise CommandError("generators from different rings")
    ring = rings.pop() if rings else s.current_ring()
    return Ideal(ring, [_coerce_poly(ring, g) for g in items])


@builtin("GBasis", 1)
def b_gbasis(s, I):
    return _ideal_of(I).gbasis()


@builtin("ReducedGBasis", 1)
def b_reduced(s, I):
    return _ideal_of(I).reduced_gbasis()


@builtin("LT", 1)
def b_lt(s, x):
    if isinstance(x, Polynomial):
        return x.ring.monomial(x.LPP(), x.LC())
    return leading_term_ideal(_ideal_of(x))


@builtin("LPP", 1)
def b_lpp(s, f):
    f = _want(f, Polynomial, "a polynomial")
    return f.ring.monomial(f.LPP())


@builtin("LC", 1)
def b_lc(s, f):
    f = _want(f, Polynomial, "a polynomial")
    K = f.ring.field
    return normalize_number(K.to_rational(f.LC())) if K != QQ else normalize_number(f.LC())


@builtin("deg", 1)
def b_deg(s, f):
    return _want(f, Polynomial, "a polynomial").degree()


@builtin("NF", 2)
def b_nf(s, f, I):
    I = _ideal_of(I)
    return normal_form(_coerce_poly(I.ring, f), I.gbasis())


@builtin("elim", 2)
def b_elim(s, L, I):
    I = _ideal_of(I)
    names = L if isinstance(L, list) else [L]
    for v in names:
        _want(v, Polynomial, "a list of indeterminates")
    E = idealops.elim(names, I)
    back = [I.ring.index(v) for v in E.ring.names]
    return Ideal(I.ring, [map_polynomial(g, I.ring, back) for g in E.gens])


@builtin("MinSubsetOfGens", 1)
def b_minsubset(s, I):
    return idealops.min_subset_of_gens(_ideal_of(I))


@builtin("IsZeroDim", 1)
def b_iszerodim(s, I):
    return idealops.is_zero_dim(_ideal_of(I))


@builtin("HilbertSeries", 1)
def b_hilbert(s, Q):
    if isinstance(Q, PolyRing):
        return hilbert_series(Ideal(Q, []))
    if isinstance(Q, MonomialIdeal):
        return hilbert_series(Q)
    return hilbert_series(_ideal_of(Q))


@builtin("toric", 1)
def b_toric(s, M):
    """Columns of ``M`` are the exponent vectors of the first indeterminates of the current ring."""
    rows = _rows(M)
    ring = s.current_ring()
    k = len(rows[0])
    if k > ring.n:
        raise CommandError(f"matrix has {k} columns but the current ring has {ring.n} indeterminates")
    for r in rows:
        for x in r:
            _int(x, "integer exponents")
    sub = ring if k == ring.n else PolyRing(ring.field, ring.names[:k])
    A = [[rows[j][i] for j in range(len(rows))] for i in range(k)]
    T = special.toric(sub, A)
    if sub is ring:
        return T
    return Ideal(ring, [map_polynomial(g, ring, list(range(k))) for g in T.gens])


@builtin("ImplicitHypersurface", 2, 3)
def b_implicit(s, P, L, algo="ElimTH"):
    P = _want(P, PolyRing, "a target ring")
    L = _want(L, list, "a list of parametrizing polynomials")
    return special.implicit_hypersurface(P, L, _want(algo, str, "an algorithm name"), seed=s.seed())


@builtin("gin", 1)
def b_gin(s, I):
    return special.gin(_ideal_of(I), rng=s.rng, sink=s.sink)


@builtin("rgin", 1)
def b_rgin(s, I):
    return special.rgin(_ideal_of(I), rng=s.rng, sink=s.sink)


@builtin("MinPolyQuot", 2, 3)
def b_minpoly(s, f, I, z=None):
    I = _ideal_of(I)
    return zerodim.min_poly_quot(_coerce_poly(I.ring, f), I, z, seed=s.seed())


@builtin("IdealOfPoints", 2)
def b_points(s, P, M):
    P = _want(P, PolyRing, "a polynomial ring")
    method = "modular" if P.field == QQ else "exact"
    return zerodim.ideal_of_points(P, _rows(M), method=method, seed=s.seed())


@builtin("QuotientBasis", 1)
def b_qbasis(s, I):
    I = _ideal_of(I)
    return [I.ring.monomial(pp) for pp in zerodim.quotient_basis(I)]


@builtin("CRTPoly", 4)
def b_crtpoly(s, f1, m1, f2, m2):
    m1, m2 = _int(m1, "an integer modulus"), _int(m2, "an integer modulus")
    if _is_num(f1) and _is_num(f2):
        return crt_combine(ResidueModulus(f1, m1), ResidueModulus(f2, m2))
    ring = f1.ring if isinstance(f1, Polynomial) else f2.ring
    return crt_poly(_coerce_poly(ring, f1), m1, _coerce_poly(ring, f2), m2)


@builtin("RatReconstructPoly", 1, 2)
def b_ratrecon(s, res, m=None):
    if isinstance(res, ResidueModulus):
        return rat_reconstruct_poly(res)
    res = _want(res, Polynomial, "a polynomial residue")
    return rat_reconstruct_poly(res, _int(m, "an integer modulus"))


@builtin("SetVerbosityLevel", 1)
def b_setverb(s, n):
    n = _int(n)
    if n < 0:
        raise CommandError("verbosity must be non-negative")
    s.sink.verbosity = n
    return None


@builtin("VerbosityLevel", 0)
def b_verb(s):
    return s.sink.verbosity


@builtin("mat", 1)
def b_mat(s, rows):
    if isinstance(rows, Matrix):
        return rows
    rows = _want(rows, list, "a list of rows")
    if not all(isinstance(r, list) for r in rows):
        raise CommandError("mat expects a list of lists")
    return Matrix(rows)


@builtin("RowMat", 1)
def b_rowmat(s, row):
    return Matrix([_want(row, list, "a list")])


@builtin("ColMat", 1)
def b_colmat(s, col):
    return Matrix([[x] for x in _want(col, list, "a list")])


@builtin("ElimMat", 2)
def b_elimmat(s, L, n):
    n = _int(n)
    L = L if isinstance(L, list) else [L]
    idx = []
    for v in L:
        if isinstance(v, Polynomial):
            idx.append(v.as_indeterminate() + 1)
        else:
            idx.append(_int(v, "indeterminate indices"))
    return Matrix(elim_mat(idx, n).rows)


@builtin("indent", 1)
def b_indent(s, v):
    return indent(v)


@builtin("CpuTime", 0)
def b_cputime(s):
    return Seconds(time.process_time())


@builtin("TimeFrom", 1)
def b_timefrom(s, t0):
    if not isinstance(t0, (Seconds, int, Fraction)):
        raise CommandError("TimeFrom expects a value returned by CpuTime()")
    return Seconds(time.process_time() - float(t0))


@builtin("NewPolyRing", 2, 4)
def b_newpolyring(s, K, names, M=None, grading=0):
    if not isinstance(K, Field):
        raise CommandError(f"{show(K)} is not a coefficient field")
    names = _want(names, str, "a string of indeterminate names")
    order = None
    if isinstance(M, Matrix):
        order = OrderMatrix(M.rows)
    elif isinstance(M, str):
        order = M
    elif M is not None:
        raise CommandError("the ordering must be a matrix or an ordering name")
    grading = _int(grading, "a grading dimension")
    weights = None
    if grading == 1 and order is not None and not isinstance(order, str):
        weights = order.rows[0]
    elif grading > 1:
        raise CommandError("only gradings of dimension 0 or 1 are supported")
    return PolyRing(K, names, order, weights)


@builtin("NewRingTwinFloat", 1)
def b_twin(s, bits):
    return TwinFloatField(_int(bits, "a number of bits"))


@builtin("ReadExpr", 2)
def b_readexpr(s, P, text):
    return parse_polynomial(_want(P, PolyRing, "a polynomial ring"), _want(text, str, "a string"))


@builtin("RingOf", 1)
def b_ringof(s, x):
    if isinstance(x, (Polynomial, Ideal, MonomialIdeal)):
        return x.ring
    raise CommandError(f"a {type_name(x)} has no ring")


@builtin("PolyAlgebraHom", 3)
def b_hom(s, P, Q, L):
    P = _want(P, PolyRing, "a source ring")
    Q = _want(Q, PolyRing, "a destination ring")
    L = _want(L, list, "a list of images")
    return PolyAlgebraHom(P, Q, [_coerce_poly(Q, v) for v in L])


@builtin("apply", 2)
def b_apply(s, hom, x):
    return _apply(_want(hom, PolyAlgebraHom, "a ring homomorphism"), x)


@builtin("gens", 1)
def b_gens(s, x):
    if isinstance(x, MonomialIdeal):
        return x.polys()
    return list(_ideal_of(x).gens)


@builtin("indets", 1)
def b_indets(s, P):
    return list(_want(P, PolyRing, "a polynomial ring").gens)


@builtin("indet", 2)
def b_indet(s, P, j):
    P = _want(P, PolyRing, "a polynomial ring")
    j = _int(j)
    if not 1 <= j <= P.n:
        raise IndexError(f"indeterminate index {j} out of range 1..{P.n}")
    return P.indet(j - 1)


@builtin("random", 2)
def b_random(s, a, b):
    a, b = _int(a), _int(b)
    if a > b:
        raise CommandError("empty range")
    return s.rng.randint(a, b)


@builtin("sum", 1)
def b_sum(s, L):
    acc = 0
    for x in _want(L, list, "a list"):
        acc = s.arith("+", acc, x)
    return acc


@builtin("product", 1)
def b_product(s, L):
    acc = 1
    for x in _want(L, list, "a list"):
        acc = s.arith("*", acc, x)
    return acc


@builtin("len", 1)
def b_len(s, x):
    if isinstance(x, (list, str, Polynomial)):
        return len(x)
    if isinstance(x, Matrix):
        return x.nrows
    raise CommandError(f"a {type_name(x)} has no length")


@builtin("concat", 2)
def b_concat(s, a, b):
    return list(_want(a, list, "a list")) + list(_want(b, list, "a list"))


@builtin("EqSet", 2)
def b_eqset(s, a, b):
    return set(_want(a, list, "a list")) == set(_want(b, list, "a list"))


@builtin("IsContained", 2)
def b_contained(s, I, J):
    I, J = _ideal_of(I), _ideal_of(J)
    return all(J.contains(g) for g in I.gens)


@builtin("IsElem", 2)
def b_iselem(s, f, I):
    I = _ideal_of(I)
    return I.contains(_coerce_poly(I.ring, f))


@builtin("IsStronglyStable", 1)
def b_stable(s, I):
    return _want(I, MonomialIdeal, "a monomial ideal").is_strongly_stable()


@builtin("record", 0)
def b_record(s):
    return Record({})


@builtin("type", 1)
def b_type(s, x):
    return type_name(x)


__all__ = ["Session", "BUILTINS", "CommandError", "UnknownName", "Text"]
