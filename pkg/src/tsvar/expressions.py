"""Scalar expressions in t, y1..yn, v1..vn.

y_k stands for the k-th component of the sigma-composed state and v_k for
the k-th component of the delta derivative; integrands are evaluated at
(t, y_sigma, y_delta).  Expressions are parsed into an immutable AST,
evaluated over numpy arrays (broadcasting allowed), and differentiated
symbolically with light constant folding.
"""

import re

import numpy as np

from .errors import EvalError, ExprSyntaxError

__all__ = [
    "Expr", "Num", "Var", "Neg", "Add", "Sub", "Mul", "Div", "Pow", "Call",
    "parse", "diff", "evaluate", "eval_values", "to_string", "max_var_index",
]

_FUNCTIONS = {
    "sin": np.sin,
    "cos": np.cos,
    "exp": np.exp,
    "log": np.log,
    "sqrt": np.sqrt,
    "abs": np.abs,
    "sign": np.sign,  # derivative of abs; 0 at 0 by convention
}


class Expr:
    __slots__ = ()

    def __str__(self):
        return to_string(self)

    def __repr__(self):
        return f"{type(self).__name__}({to_string(self)!r})"

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))


class Num(Expr):
    __slots__ = ("value",)

    def __init__(self, value):
        object.__setattr__(self, "value", float(value))

    def _key(self):
        return self.value


class Var(Expr):
    """kind is 't', 'y', or 'v'; index is 0-based (unused for 't')."""

    __slots__ = ("kind", "index")

    def __init__(self, kind, index=0):
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "index", int(index))

    def _key(self):
        return (self.kind, self.index)

    @property
    def name(self):
        return "t" if self.kind == "t" else f"{self.kind}{self.index + 1}"


class Neg(Expr):
    __slots__ = ("arg",)

    def __init__(self, arg):
        object.__setattr__(self, "arg", arg)

    def _key(self):
        return self.arg


class _Binary(Expr):
    __slots__ = ("left", "right")

    def __init__(self, left, right):
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    def _key(self):
        return (self.left, self.right)


class Add(_Binary):
    __slots__ = ()


class Sub(_Binary):
    __slots__ = ()


class Mul(_Binary):
    __slots__ = ()


class Div(_Binary):
    __slots__ = ()


class Pow(_Binary):
    __slots__ = ()


class Call(Expr):
    __slots__ = ("fn", "arg")

    def __init__(self, fn, arg):
        object.__setattr__(self, "fn", fn)
        object.__setattr__(self, "arg", arg)

    def _key(self):
        return (self.fn, self.arg)


ZERO = Num(0.0)
ONE = Num(1.0)


def _is_num(e, value=None):
    return isinstance(e, Num) and (value is None or e.value == value)


# -- folding constructors ---------------------------------------------------

def add(a, b):
    if _is_num(a) and _is_num(b):
        return Num(a.value + b.value)
    if _is_num(a, 0.0):
        return b
    if _is_num(b, 0.0):
        return a
    return Add(a, b)


def sub(a, b):
    if _is_num(a) and _is_num(b):
        return Num(a.value - b.value)
    if _is_num(b, 0.0):
        return a
    if _is_num(a, 0.0):
        return neg(b)
    return Sub(a, b)


def mul(a, b):
    if _is_num(a) and _is_num(b):
        return Num(a.value * b.value)
    if _is_num(a, 0.0) or _is_num(b, 0.0):
        return ZERO
    if _is_num(a, 1.0):
        return b
    if _is_num(b, 1.0):
        return a
    return Mul(a, b)


def div(a, b):
    if _is_num(a) and _is_num(b) and b.value != 0.0:
        return Num(a.value / b.value)
    if _is_num(b, 1.0):
        return a
    return Div(a, b)


def pow_(a, b):
    if _is_num(b, 0.0):
        return ONE
    if _is_num(b, 1.0):
        return a
    if _is_num(a) and _is_num(b) and (b.value.is_integer() or a.value > 0):
        return Num(a.value ** b.value)
    return Pow(a, b)


def neg(a):
    if _is_num(a):
        return Num(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def call(fn, arg):
    return Call(fn, arg)


# -- parsing ----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?"
    r"|\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z]+\d*)"
    r"|(?P<op>[-+*/^()]))"
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ExprSyntaxError(
                f"unexpected character {stripped[0]!r}",
                len(text) - len(stripped),
            )
        if m.lastgroup == "num":
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.lastgroup == "ident":
            tokens.append(("ident", m.group("ident"), m.start("ident")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    """Recursive descent; precedence ^ > unary - > * / > + -, all
    left-associative except ^ (right-associative)."""

    def __init__(self, text, n):
        self.text = text
        self.n = n
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, off = self.next()
        if kind != "op" or val != op:
            raise ExprSyntaxError(f"expected {op!r}", off)

    def parse(self):
        e = self.sum_()
        kind, val, off = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected token {val!r}", off)
        return e

    def sum_(self):
        e = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.term()
                e = Add(e, rhs) if val == "+" else Sub(e, rhs)
            else:
                return e

    def term(self):
        e = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                rhs = self.factor()
                e = Mul(e, rhs) if val == "*" else Div(e, rhs)
            else:
                return e

    def factor(self):
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.next()
            return Neg(self.factor())
        return self.power()

    def power(self):
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.next()
            return Pow(base, self.factor())
        return base

    def atom(self):
        kind, val, off = self.next()
        if kind == "num":
            return Num(float(val))
        if kind == "op" and val == "(":
            e = self.sum_()
            self.expect_op(")")
            return e
        if kind == "ident":
            return self.identifier(val, off)
        raise ExprSyntaxError(f"expected a value, got {val!r}", off)

    def identifier(self, name, off):
        if name == "t":
            return Var("t")
        if name in _FUNCTIONS:
            self.expect_op("(")
            arg = self.sum_()
            self.expect_op(")")
            return Call(name, arg)
        m = re.fullmatch(r"([yv])(\d+)", name)
        if m:
            index = int(m.group(2))
            if not 1 <= index <= self.n:
                raise ExprSyntaxError(
                    f"variable {name!r} out of range for dimension {self.n}", off
                )
            return Var(m.group(1), index - 1)
        raise ExprSyntaxError(f"unknown identifier {name!r}", off)


def parse(text, n):
    """Parse expression text for a problem of dimension n."""
    if not text or not text.strip():
        raise ExprSyntaxError("empty expression", 0)
    return _Parser(text, n).parse()


def max_var_index(e):
    """Largest 1-based y/v index used, 0 if none."""
    if isinstance(e, Var):
        return 0 if e.kind == "t" else e.index + 1
    if isinstance(e, Num):
        return 0
    if isinstance(e, Neg):
        return max_var_index(e.arg)
    if isinstance(e, Call):
        return max_var_index(e.arg)
    return max(max_var_index(e.left), max_var_index(e.right))


# -- printing ---------------------------------------------------------------

_PREC_ADD, _PREC_MUL, _PREC_NEG, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


def _prec(e):
    if isinstance(e, (Add, Sub)):
        return _PREC_ADD
    if isinstance(e, (Mul, Div)):
        return _PREC_MUL
    if isinstance(e, Neg):
        return _PREC_NEG
    if isinstance(e, Num) and e.value < 0:
        return _PREC_NEG
    if isinstance(e, Pow):
        return _PREC_POW
    return _PREC_ATOM


def _fmt(e, min_prec):
    s, p = _fmt_raw(e)
    return f"({s})" if p < min_prec else s


def _fmt_raw(e):
    if isinstance(e, Num):
        v = e.value
        s = str(int(v)) if v.is_integer() and abs(v) < 1e15 else repr(v)
        return s, _prec(e)
    if isinstance(e, Var):
        return e.name, _PREC_ATOM
    if isinstance(e, Neg):
        return f"-{_fmt(e.arg, _PREC_NEG)}", _PREC_NEG
    if isinstance(e, Add):
        return f"{_fmt(e.left, _PREC_ADD)}+{_fmt(e.right, _PREC_ADD)}", _PREC_ADD
    if isinstance(e, Sub):
        return f"{_fmt(e.left, _PREC_ADD)}-{_fmt(e.right, _PREC_MUL)}", _PREC_ADD
    if isinstance(e, Mul):
        return f"{_fmt(e.left, _PREC_MUL)}*{_fmt(e.right, _PREC_MUL)}", _PREC_MUL
    if isinstance(e, Div):
        return f"{_fmt(e.left, _PREC_MUL)}/{_fmt(e.right, _PREC_NEG)}", _PREC_MUL
    if isinstance(e, Pow):
        return f"{_fmt(e.left, _PREC_ATOM)}^{_fmt(e.right, _PREC_NEG)}", _PREC_POW
    if isinstance(e, Call):
        return f"{e.fn}({_fmt(e.arg, 0)})", _PREC_ATOM
    raise TypeError(f"not an Expr: {e!r}")


def to_string(e):
    return _fmt_raw(e)[0]


# -- differentiation --------------------------------------------------------

def _parse_var(var):
    if isinstance(var, Var):
        return var
    if var == "t":
        return Var("t")
    m = re.fullmatch(r"([yv])([1-9]\d*)", var)
    if not m:
        raise ExprSyntaxError(f"bad differentiation variable {var!r}", 0)
    return Var(m.group(1), int(m.group(2)) - 1)


def diff(e, var):
    """Symbolic partial derivative of e with respect to t, y_k, or v_k."""
    v = _parse_var(var)
    return _diff(e, v)


def _diff(e, v):
    if isinstance(e, Num):
        return ZERO
    if isinstance(e, Var):
        return ONE if e._key() == v._key() else ZERO
    if isinstance(e, Neg):
        return neg(_diff(e.arg, v))
    if isinstance(e, Add):
        return add(_diff(e.left, v), _diff(e.right, v))
    if isinstance(e, Sub):
        return sub(_diff(e.left, v), _diff(e.right, v))
    if isinstance(e, Mul):
        return add(mul(_diff(e.left, v), e.right), mul(e.left, _diff(e.right, v)))
    if isinstance(e, Div):
        num = sub(mul(_diff(e.left, v), e.right), mul(e.left, _diff(e.right, v)))
        return div(num, mul(e.right, e.right))
    if isinstance(e, Pow):
        du = _diff(e.left, v)
        if isinstance(e.right, Num):
            c = e.right.value
            return mul(mul(Num(c), pow_(e.left, Num(c - 1.0))), du)
        dw = _diff(e.right, v)
        # u^w * (w' log u + w u'/u); requires u > 0 at evaluation
        return mul(
            Pow(e.left, e.right),
            add(mul(dw, call("log", e.left)), div(mul(e.right, du), e.left)),
        )
    if isinstance(e, Call):
        du = _diff(e.arg, v)
        u = e.arg
        if e.fn == "sin":
            return mul(call("cos", u), du)
        if e.fn == "cos":
            return neg(mul(call("sin", u), du))
        if e.fn == "exp":
            return mul(call("exp", u), du)
        if e.fn == "log":
            return div(du, u)
        if e.fn == "sqrt":
            return div(du, mul(Num(2.0), call("sqrt", u)))
        if e.fn == "abs":
            return mul(call("sign", u), du)
        if e.fn == "sign":
            return ZERO
    raise TypeError(f"not an Expr: {e!r}")


# -- evaluation -------------------------------------------------------------

def _eval(e, t, y, v):
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Var):
        if e.kind == "t":
            return t
        return y[e.index] if e.kind == "y" else v[e.index]
    if isinstance(e, Neg):
        return -_eval(e.arg, t, y, v)
    if isinstance(e, Add):
        return _eval(e.left, t, y, v) + _eval(e.right, t, y, v)
    if isinstance(e, Sub):
        return _eval(e.left, t, y, v) - _eval(e.right, t, y, v)
    if isinstance(e, Mul):
        return _eval(e.left, t, y, v) * _eval(e.right, t, y, v)
    if isinstance(e, Div):
        # np.divide: 1/0 becomes inf for the finiteness check, not a raise
        return np.divide(_eval(e.left, t, y, v), _eval(e.right, t, y, v))
    if isinstance(e, Pow):
        base = _eval(e.left, t, y, v)
        if isinstance(e.right, Num) and e.right.value.is_integer():
            k = int(e.right.value)
            if k == 2:
                return base * base
            return np.power(base, k)
        expo = _eval(e.right, t, y, v)
        return np.power(base, expo)
    if isinstance(e, Call):
        return _FUNCTIONS[e.fn](_eval(e.arg, t, y, v))
    raise TypeError(f"not an Expr: {e!r}")


def _coerce(x):
    # numpy scalars divide to inf/nan instead of raising, keeping one
    # error-detection path for scalar and array evaluation
    return x if isinstance(x, np.ndarray) else np.float64(x)


def eval_values(e, t=0.0, y=(), v=()):
    """Evaluate over scalars or numpy arrays; inputs broadcast together.

    Raises EvalError when the result is not finite real (domain errors of
    log/sqrt/**, division by zero), reporting the grid time when t is an
    array aligned with the result.
    """
    t = _coerce(t)
    y = [_coerce(c) for c in y]
    v = [_coerce(c) for c in v]
    with np.errstate(all="ignore"):
        out = _eval(e, t, y, v)
    out = np.asarray(out, dtype=float)
    if not np.all(np.isfinite(out)):
        bad_t = None
        t_arr = np.asarray(t, dtype=float)
        if t_arr.ndim > 0 and out.ndim > 0 and t_arr.shape == out.shape[-t_arr.ndim:]:
            mask = ~np.isfinite(out)
            axes = tuple(range(out.ndim - t_arr.ndim))
            bad = np.argwhere(mask.any(axis=axes) if axes else mask)
            if bad.size:
                bad_t = float(t_arr[tuple(bad[0])])
        elif t_arr.ndim == 0:
            bad_t = float(t_arr)
        raise EvalError(f"expression {to_string(e)!r} is undefined", t=bad_t)
    return out


def eval_values_raw(e, t=0.0, y=(), v=()):
    """Like eval_values, but out-of-domain points come back as nan/inf
    instead of raising; callers mask them."""
    t = _coerce(t)
    y = [_coerce(c) for c in y]
    v = [_coerce(c) for c in v]
    with np.errstate(all="ignore"):
        out = _eval(e, t, y, v)
    return np.asarray(out, dtype=float)


def evaluate(e, t=0.0, y=(), v=()):
    """Pointwise evaluation; returns a float."""
    return float(eval_values(e, t, y, v))
