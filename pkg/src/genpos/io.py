"""Line-oriented ideal files.

    # comment
    field: QQ            (or GF(p))
    vars: x1 x2 x3       (order is precedence, x1 greatest)
    I: x1*x2, x1^3 + 2/3 x2^3,
       x2^4              (the generator list may span lines)
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from importlib import resources

from .algebra import QQ, FieldSpec, Polynomial, is_prime, term_mul
from .groebner import PolynomialIdeal


class IdealSyntaxError(ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = "line %d" % line + (", column %d" % column if column is not None else "") + ": "
        super().__init__(where + message)


class NonHomogeneousGenerator(IdealSyntaxError):
    pass


@dataclass(frozen=True)
class IdealDocument:
    field: FieldSpec
    variables: tuple
    generators: tuple
    label: str | None = None
    metadata: dict = dc_field(default_factory=dict, compare=False, hash=False)

    @property
    def n(self) -> int:
        return len(self.variables)

    def ideal(self) -> PolynomialIdeal:
        return PolynomialIdeal(self.generators, self.field, self.n)


_FIELD_RE = re.compile(r"^\s*(QQ|GF\(\s*(\d+)\s*\))\s*$")
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


def _parse_field(text, line, col):
    m = _FIELD_RE.match(text)
    if not m:
        raise IdealSyntaxError("field must be QQ or GF(<prime>), got %r" % text.strip(), line, col)
    if m.group(1) == "QQ":
        return QQ
    p = int(m.group(2))
    if not is_prime(p) or p >= 2**31:
        raise IdealSyntaxError("GF modulus %d is not a prime below 2^31" % p, line, col)
    return FieldSpec(p)


class _PolyParser:
    """Recursive descent over a single generator expression.

    poly   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (['*'] factor)*
    factor := number ['/' number] | variable ['^' number]
    """

    def __init__(self, text, start_col, line, names, field):
        self.s = text
        self.pos = 0
        self.col0 = start_col
        self.line = line
        self.names = sorted(names, key=len, reverse=True)
        self.index = {v: k for k, v in enumerate(names)}
        self.n = len(names)
        self.field = field

    def error(self, msg):
        raise IdealSyntaxError(msg, self.line, self.col0 + self.pos)

    def skip(self):
        while self.pos < len(self.s) and self.s[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.s[self.pos] if self.pos < len(self.s) else ""

    def number(self):
        m = re.compile(r"\d+").match(self.s, self.pos)
        if not m:
            self.error("expected a number")
        self.pos = m.end()
        return int(m.group())

    def factor(self):
        ch = self.peek()
        if ch.isdigit():
            num = self.number()
            if self.peek() == "/":
                self.pos += 1
                self.skip()
                den = self.number()
                if den == 0:
                    self.error("division by zero")
                return Fraction(num, den), None
            return Fraction(num), None
        for name in self.names:
            if self.s.startswith(name, self.pos):
                end = self.pos + len(name)
                # a longer identifier that is not a declared name is an error
                if end < len(self.s) and (self.s[end].isalnum() or self.s[end] == "_") and not any(
                    self.s.startswith(other, end) for other in self.names
                ):
                    continue
                self.pos = end
                e = 1
                if self.peek() == "^":
                    self.pos += 1
                    self.skip()
                    e = self.number()
                t = [0] * self.n
                t[self.index[name]] = e
                return Fraction(1), tuple(t)
        m = re.compile(r"[A-Za-z_][A-Za-z0-9_]*").match(self.s, self.pos)
        if m:
            self.error("unknown variable %r" % m.group())
        self.error("unexpected character %r" % (ch or "end of input"))

    def term(self):
        c, t = Fraction(1), (0,) * self.n
        while True:
            fc, ft = self.factor()
            c *= fc
            if ft is not None:
                t = term_mul(t, ft)
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                continue
            if ch and (ch.isalnum() or ch == "_"):
                continue
            return c, t

    def poly(self):
        out = {}
        sign = 1
        ch = self.peek()
        if ch in "+-" and ch:
            sign = -1 if ch == "-" else 1
            self.pos += 1
        while True:
            c, t = self.term()
            out[t] = out.get(t, 0) + sign * c
            ch = self.peek()
            if ch == "":
                break
            if ch not in "+-":
                self.error("expected '+', '-' or ',' but found %r" % ch)
            sign = -1 if ch == "-" else 1
            self.pos += 1
        if self.field.characteristic:
            for c in out.values():
                if c.denominator % self.field.characteristic == 0:
                    self.error("denominator %d vanishes in GF(%d)" % (c.denominator, self.field.characteristic))
        return Polynomial(out, self.field, self.n)


def _split_generators(chunks):
    """Split (line, col, text) chunks on commas, keeping positions."""
    out, cur, cur_pos = [], [], None
    for line, col, text in chunks:
        start = 0
        for k, ch in enumerate(text):
            if ch == ",":
                piece = text[start:k]
                if piece.strip():
                    cur.append(piece)
                    cur_pos = cur_pos or (line, col + start + (len(piece) - len(piece.lstrip())))
                out.append((cur_pos or (line, col + k), " ".join(cur)))
                cur, cur_pos = [], None
                start = k + 1
        piece = text[start:]
        if piece.strip():
            cur.append(piece)
            cur_pos = cur_pos or (line, col + start + (len(piece) - len(piece.lstrip())))
    if cur or out:
        out.append((cur_pos or (chunks[-1][0], chunks[-1][1]), " ".join(cur)))
    return out


def parse_ideal(text: str) -> IdealDocument:
    field = None
    names = None
    gen_chunks = []
    in_ideal = False
    label = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body, _, comment = raw.partition("#")
        if label is None and comment.strip().startswith("label:"):
            label = comment.strip()[len("label:"):].strip()
        if not body.strip():
            continue
        m = re.match(r"\s*(field|vars|I)\s*:", body)
        if m:
            key = m.group(1)
            rest = body[m.end():]
            col = m.end() + 1
            in_ideal = False
            if key == "field":
                if field is not None:
                    raise IdealSyntaxError("duplicate field line", lineno, 1)
                field = _parse_field(rest, lineno, col)
            elif key == "vars":
                if names is not None:
                    raise IdealSyntaxError("duplicate vars line", lineno, 1)
                names = rest.split()
                if not names:
                    raise IdealSyntaxError("no variables declared", lineno, col)
                for v in names:
                    if not _NAME_RE.match(v):
                        raise IdealSyntaxError("invalid variable name %r" % v, lineno, col + rest.find(v))
                if len(set(names)) != len(names):
                    raise IdealSyntaxError("variables must be distinct", lineno, col)
            else:
                if gen_chunks:
                    raise IdealSyntaxError("duplicate I line", lineno, 1)
                in_ideal = True
                gen_chunks.append((lineno, col, rest))
            continue
        if in_ideal:
            gen_chunks.append((lineno, 1, body))
            continue
        raise IdealSyntaxError("expected 'field:', 'vars:' or 'I:'", lineno, 1)
    if field is None:
        field = QQ
    if names is None:
        raise IdealSyntaxError("missing 'vars:' line")
    gens = []
    if gen_chunks:
        for k, ((line, col), src) in enumerate(_split_generators(gen_chunks), start=1):
            if not src.strip():
                raise IdealSyntaxError("empty generator", line, col)
            p = _PolyParser(src, col, line, names, field).poly()
            if p and not p.is_homogeneous():
                raise NonHomogeneousGenerator("generator %d (%s) is not homogeneous" % (k, src.strip()), line, col)
            gens.append(p)
    return IdealDocument(field, tuple(names), tuple(gens), label)


def serialize_ideal(doc: IdealDocument) -> str:
    lines = []
    if doc.label:
        lines.append("# label: %s" % doc.label)
    lines.append("field: %r" % doc.field)
    lines.append("vars: " + " ".join(doc.variables))
    body = ",\n   ".join(g.to_str(doc.variables) for g in doc.generators)
    lines.append("I: " + body)
    return "\n".join(lines) + "\n"


def read_ideal(path) -> IdealDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_ideal(fh.read())


def corpus_names() -> list:
    root = resources.files("genpos") / "corpus"
    return sorted(p.name[: -len(".ideal")] for p in root.iterdir() if p.name.endswith(".ideal"))


def load_corpus(name: str) -> IdealDocument:
    return parse_ideal((resources.files("genpos") / "corpus" / (name + ".ideal")).read_text(encoding="utf-8"))
