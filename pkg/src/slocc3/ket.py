"""Parse and print bra-ket state expressions such as ``|000>+|111>``.

Grammar (whitespace insignificant)::

    expr   := term (('+'|'-') term)*
    term   := factor factor*            adjacency multiplies; kets combine
                                        as tensor product, |0>|1> == |0,1>
    factor := ('-'|'+') factor | atom ('*' atom | '/' atom)*
    atom   := number | 'i' | 'sqrt' '(' expr ')' | '(' expr ')' | ket
    ket    := '|' idx (',' idx)* '>'

A ket written with contiguous digits and no commas, e.g. ``|012>``, means
one index per digit and is accepted only when every party dimension is at
most 10.  Coefficient arithmetic supports + - * / sqrt() and the imaginary
unit ``i``.  Normalization is not applied unless requested.
"""

from __future__ import annotations

import cmath

import numpy as np


class KetSyntaxError(ValueError):
    """Raised for malformed ket expressions; carries the offending position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


# --- lexer -----------------------------------------------------------------

_SYMBOLS = set("+-*/(),")


def _tokenize(text: str):
    """Yield (kind, value, pos) tokens; kets come out as index tuples or raw
    digit strings to be resolved against the party dims."""
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in _SYMBOLS:
            tokens.append((c, c, i))
            i += 1
            continue
        if c == "|":
            j = text.find(">", i + 1)
            if j < 0:
                raise KetSyntaxError("unterminated ket", i)
            body = text[i + 1 : j].replace(" ", "")
            if not body:
                raise KetSyntaxError("empty ket", i)
            if "," in body:
                parts = body.split(",")
                if not all(p.isdigit() for p in parts):
                    raise KetSyntaxError(f"bad ket indices '|{body}>'", i)
                tokens.append(("ket", ("indices", tuple(int(p) for p in parts)), i))
            else:
                if not body.isdigit():
                    raise KetSyntaxError(f"bad ket indices '|{body}>'", i)
                tokens.append(("ket", ("digits", body), i))
            i = j + 1
            continue
        if c.isdigit() or c == ".":
            j = i
            while j < n and (text[j].isdigit() or text[j] == "."):
                j += 1
            # optional exponent
            if j < n and text[j] in "eE" and j + 1 < n and (
                text[j + 1].isdigit() or text[j + 1] in "+-"
            ):
                k = j + 2 if text[j + 1] in "+-" else j + 1
                if k < n and text[k].isdigit():
                    j = k
                    while j < n and text[j].isdigit():
                        j += 1
            try:
                val = float(text[i:j])
            except ValueError:
                raise KetSyntaxError(f"bad number '{text[i:j]}'", i) from None
            tokens.append(("num", val, i))
            i = j
            continue
        if c.isalpha():
            j = i
            while j < n and text[j].isalpha():
                j += 1
            word = text[i:j]
            if word not in ("i", "sqrt"):
                raise KetSyntaxError(f"unknown name '{word}'", i)
            tokens.append((word, word, i))
            i = j
            continue
        raise KetSyntaxError(f"unexpected character '{c}'", i)
    return tokens


# --- parser ----------------------------------------------------------------

# Parsed values are either complex scalars or "term lists": lists of
# (coefficient, index-tuple) pairs, index tuples growing under adjacency.


class _Parser:
    def __init__(self, tokens, dims):
        self.tokens = tokens
        self.dims = tuple(int(d) for d in dims)
        self.k = 0

    def peek(self):
        return self.tokens[self.k] if self.k < len(self.tokens) else (None, None, -1)

    def next(self):
        tok = self.peek()
        self.k += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise KetSyntaxError(f"expected '{kind}'", tok[2])
        return tok

    # value helpers

    @staticmethod
    def _is_terms(v):
        return isinstance(v, list)

    def _mul(self, a, b, pos):
        if self._is_terms(a) and self._is_terms(b):
            return [(ca * cb, ia + ib) for ca, ia in a for cb, ib in b]
        if self._is_terms(a):
            return [(c * b, idx) for c, idx in a]
        if self._is_terms(b):
            return [(a * c, idx) for c, idx in b]
        return a * b

    def _div(self, a, b, pos):
        if self._is_terms(b):
            raise KetSyntaxError("cannot divide by a ket expression", pos)
        if b == 0:
            raise KetSyntaxError("division by zero", pos)
        if self._is_terms(a):
            return [(c / b, idx) for c, idx in a]
        return a / b

    def _add(self, a, b, sign, pos):
        if self._is_terms(a) != self._is_terms(b):
            raise KetSyntaxError("cannot add a number and a ket expression", pos)
        if self._is_terms(a):
            return a + [(sign * c, idx) for c, idx in b]
        return a + sign * b

    def _ket_value(self, payload, pos):
        kind, body = payload
        if kind == "indices":
            indices = body
        else:
            if len(body) == 1:
                indices = (int(body),)
            else:
                if any(d > 10 for d in self.dims):
                    raise KetSyntaxError(
                        f"ket '|{body}>' is ambiguous when a dimension exceeds 10; "
                        "separate indices with commas",
                        pos,
                    )
                indices = tuple(int(ch) for ch in body)
        return [(1.0 + 0.0j, indices)]

    # grammar

    def parse_expr(self):
        value = self.parse_term()
        while self.peek()[0] in ("+", "-"):
            op, _, pos = self.next()
            rhs = self.parse_term()
            value = self._add(value, rhs, 1 if op == "+" else -1, pos)
        return value

    def parse_term(self):
        value = self.parse_factor()
        while True:
            kind = self.peek()[0]
            if kind in ("num", "i", "sqrt", "(", "ket"):
                pos = self.peek()[2]
                value = self._mul(value, self.parse_factor(), pos)
            else:
                return value

    def parse_factor(self):
        kind, _, pos = self.peek()
        if kind in ("+", "-"):
            self.next()
            v = self.parse_factor()
            if kind == "-":
                v = self._mul(-1.0 + 0.0j, v, pos)
            return v
        value = self.parse_atom()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.next()
            rhs = self.parse_atom()
            value = self._mul(value, rhs, pos) if op == "*" else self._div(value, rhs, pos)
        return value

    def parse_atom(self):
        kind, val, pos = self.next()
        if kind == "num":
            return complex(val)
        if kind == "i":
            return 1j
        if kind == "sqrt":
            self.expect("(")
            inner = self.parse_expr()
            self.expect(")")
            if self._is_terms(inner):
                raise KetSyntaxError("sqrt of a ket expression", pos)
            return cmath.sqrt(inner)
        if kind == "(":
            inner = self.parse_expr()
            self.expect(")")
            return inner
        if kind == "ket":
            return self._ket_value(val, pos)
        raise KetSyntaxError("expected a number, coefficient or ket", pos)


def parse_ket(text: str, dims, normalize: bool = False) -> np.ndarray:
    """Parse a ket expression into its coefficient tensor for the given dims.

    Like terms are combined.  The all-zero expression ``0`` parses to the
    zero tensor; any other purely numeric expression is an error.  With
    ``normalize=True`` the result is divided by its Euclidean norm.
    """
    dims = tuple(int(d) for d in dims)
    if any(d < 1 for d in dims):
        raise ValueError(f"bad dims {dims}")
    tokens = _tokenize(text)
    if not tokens:
        raise KetSyntaxError("empty expression", 0)
    parser = _Parser(tokens, dims)
    value = parser.parse_expr()
    if parser.k < len(tokens):
        raise KetSyntaxError("unexpected trailing input", tokens[parser.k][2])

    if not isinstance(value, list):
        if value == 0:
            return np.zeros(dims, dtype=complex)
        raise KetSyntaxError("expression contains no kets", 0)

    out = np.zeros(dims, dtype=complex)
    for coeff, indices in value:
        if len(indices) != len(dims):
            raise KetSyntaxError(
                f"term has {len(indices)} party indices, expected {len(dims)}", 0
            )
        for idx, d in zip(indices, dims):
            if idx >= d:
                raise KetSyntaxError(f"index {idx} exceeds dimension {d}", 0)
        out[tuple(indices)] += coeff
    if not np.all(np.isfinite(out)):
        raise KetSyntaxError("coefficients overflowed to non-finite values", 0)
    if normalize:
        norm = np.linalg.norm(out)
        if norm == 0:
            raise ValueError("cannot normalize the zero state")
        out = out / norm
    return out


# --- printer ---------------------------------------------------------------


def _format_real(x: float, precision) -> str:
    if precision is None:
        if x == int(x) and abs(x) < 1e15:
            return str(int(x))
        return repr(x)
    return f"{x:.{precision}g}"


def _format_coeff(c: complex, precision) -> str:
    """Render a coefficient, empty for 1 and '-' for -1; complex values are
    parenthesized so the output re-parses unambiguously."""
    re, im = c.real, c.imag
    if im == 0.0:
        if re == 1.0:
            return ""
        if re == -1.0:
            return "-"
        return _format_real(re, precision)
    if re == 0.0:
        if im == 1.0:
            return "i"
        if im == -1.0:
            return "-i"
        return f"{_format_real(im, precision)}i"
    sign = "+" if im >= 0 else "-"
    return f"({_format_real(re, precision)}{sign}{_format_real(abs(im), precision)}i)"


def print_ket(t, precision: int | None = None) -> str:
    """Canonical ket string: terms in lexicographic index order, zero
    coefficients omitted, unit coefficients elided.

    With the default full precision, ``parse_ket(print_ket(t), t.shape)``
    reproduces ``t`` exactly.
    """
    t = np.asarray(t, dtype=complex)
    dims = t.shape
    comma = any(d > 10 for d in dims)
    parts = []
    for indices in np.ndindex(*dims):
        c = t[indices]
        if c == 0:
            continue
        body = ",".join(str(i) for i in indices) if comma else "".join(
            str(i) for i in indices
        )
        parts.append(f"{_format_coeff(complex(c), precision)}|{body}>")
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out
