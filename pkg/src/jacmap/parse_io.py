"""Text formats: the polynomial grammar and the ``jacmap-cert/1`` document.

Grammar (whitespace is ignored)::

    map     := '(' expr ',' expr ')' | expr ';' expr
    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := factor (('*' factor) | implicit)*
    factor  := ['+'|'-'] atom ['^' INT]
    atom    := INT ['/' INT] | 'x' | 'y' | '(' expr ')'

``a/b`` is a rational literal, not a division operator.  Multiplication
must be written as ``*`` except directly after a closing parenthesis and
before a variable, so ``(1/27)y^3`` is accepted while ``2x`` is not.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Optional

from jacmap.poly import Poly2, PolyMap

MAX_EXPONENT = 1000
MAX_NESTING = 200
CERT_SCHEMA = "jacmap-cert/1"


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.message = message
        self.pos = pos


class UnknownIdentifier(ParseError):
    pass


class NegativeExponent(ParseError):
    pass


class ArityError(ParseError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str  # INT, IDENT, OP, END
    text: str
    pos: int


_OPS = set("+-*/^(),;")


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "0123456789":
            j = i
            while j < n and text[j] in "0123456789":
                j += 1
            tokens.append(Token("INT", text[i:j], i))
            i = j
        elif ch.isascii() and (ch.isalpha() or ch == "_"):
            j = i
            while j < n and text[j].isascii() and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("IDENT", text[i:j], i))
            i = j
        elif ch in _OPS:
            tokens.append(Token("OP", ch, i))
            i += 1
        elif ch == "−":  # unicode minus sign
            tokens.append(Token("OP", "-", i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(Token("END", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0
        self.depth = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def at(self, text: str) -> bool:
        return self.tok.kind == "OP" and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise ParseError(f"expected {text!r}, found {found!r}", self.tok.pos)
        tok = self.tok
        self.i += 1
        return tok

    def expect_end(self) -> None:
        if self.tok.kind != "END":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)

    def expr(self) -> Poly2:
        self.depth += 1
        if self.depth > MAX_NESTING:
            raise ParseError("expression nested too deeply", self.tok.pos)
        acc = self.term()
        while self.at("+") or self.at("-"):
            op = self.tok.text
            self.i += 1
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        self.depth -= 1
        return acc

    def term(self) -> Poly2:
        acc, closed_paren = self.factor()
        while True:
            if self.at("*"):
                self.i += 1
                rhs, closed_paren = self.factor()
            elif closed_paren and self.tok.kind == "IDENT":
                rhs, closed_paren = self.factor()
            else:
                return acc
            acc = acc * rhs

    def factor(self) -> tuple[Poly2, bool]:
        # a leading sign binds looser than '^': -x^2 == -(x^2)
        if self.at("-") or self.at("+"):
            neg = self.tok.text == "-"
            self.i += 1
            self.depth += 1
            if self.depth > MAX_NESTING:
                raise ParseError("expression nested too deeply", self.tok.pos)
            val, closed = self.factor()
            self.depth -= 1
            return (-val if neg else val), closed
        base, closed = self.atom()
        if self.at("^"):
            self.i += 1
            if self.at("-"):
                raise NegativeExponent("negative exponent", self.tok.pos)
            if self.tok.kind != "INT":
                raise ParseError("exponent must be an integer literal", self.tok.pos)
            e = int(self.tok.text)
            if e > MAX_EXPONENT:
                raise ParseError(f"exponent exceeds {MAX_EXPONENT}", self.tok.pos)
            self.i += 1
            base = base**e
            closed = False
            if self.at("^"):
                raise ParseError("chained exponents need parentheses", self.tok.pos)
        return base, closed

    def atom(self) -> tuple[Poly2, bool]:
        tok = self.tok
        if tok.kind == "INT":
            self.i += 1
            num = int(tok.text)
            if self.at("/"):
                self.i += 1
                if self.tok.kind != "INT":
                    raise ParseError("denominator must be an integer literal", self.tok.pos)
                den = int(self.tok.text)
                if den == 0:
                    raise ParseError("zero denominator", self.tok.pos)
                self.i += 1
                return Poly2.const(Fraction(num, den)), False
            return Poly2.const(num), False
        if tok.kind == "IDENT":
            self.i += 1
            if tok.text == "x":
                return Poly2.x(), False
            if tok.text == "y":
                return Poly2.y(), False
            raise UnknownIdentifier(f"unknown identifier {tok.text!r}", tok.pos)
        if self.at("("):
            self.i += 1
            val = self.expr()
            self.expect(")")
            return val, True
        found = tok.text or "end of input"
        raise ParseError(f"unexpected {found!r}", tok.pos)


def parse_poly(text: str) -> Poly2:
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("input is not valid UTF-8", exc.start) from None
    p = _Parser(text)
    val = p.expr()
    p.expect_end()
    return val


def parse_map(text: str) -> PolyMap:
    """Parse ``"(P, Q)"`` or ``"P; Q"``."""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("input is not valid UTF-8", exc.start) from None
    p = _Parser(text)
    components = _split_components(p)
    if len(components) != 2:
        raise ArityError(f"a planar map needs 2 components, got {len(components)}", 0)
    return PolyMap(*components)


def _split_components(p: _Parser) -> List[Poly2]:
    if p.at("("):
        # try the tuple form first; "(x+1)*y; y" falls back to the ';' form
        start = p.i
        p.i += 1
        first = p.expr()
        if p.at(","):
            parts = [first]
            while p.at(","):
                p.i += 1
                parts.append(p.expr())
            p.expect(")")
            p.expect_end()
            return parts
        p.i = start
        p.depth = 0
    parts = [p.expr()]
    while p.at(";"):
        p.i += 1
        parts.append(p.expr())
    p.expect_end()
    return parts


# -- formatting ----------------------------------------------------------------

def _format_monomial(ex: int, ey: int) -> str:
    parts = []
    if ex:
        parts.append("x" if ex == 1 else f"x^{ex}")
    if ey:
        parts.append("y" if ey == 1 else f"y^{ey}")
    return "*".join(parts)


def format_poly(p: Poly2) -> str:
    """Canonical text: graded-lex order, ``(a/b)*`` for non-integer coefficients."""
    if p.is_zero():
        return "0"
    out = []
    for i, ((ex, ey), c) in enumerate(p.sorted_terms()):
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        mono = _format_monomial(ex, ey)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        elif a.denominator == 1:
            body = f"{a}*{mono}"
        else:
            body = f"({a})*{mono}"
        if i == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def format_map(m: PolyMap) -> str:
    return f"({format_poly(m.P)}, {format_poly(m.Q)})"


def format_gapset(gaps) -> str:
    return "{" + ", ".join(str(g) for g in sorted(gaps)) + "}" if gaps else "{}"


# -- certificate documents ---------------------------------------------------

def fraction_str(c: Fraction) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def poly_to_doc(p: Poly2) -> dict:
    return {
        "text": format_poly(p),
        "terms": [[ex, ey, fraction_str(c)] for (ex, ey), c in p.sorted_terms()],
    }


def poly_from_doc(doc: dict) -> Poly2:
    return Poly2({(int(ex), int(ey)): Fraction(c) for ex, ey, c in doc["terms"]})


def certificate_to_doc(cert) -> dict:
    from jacmap.analyzer import Verdict

    rep, split, flags, norm = cert.report, cert.split, cert.flags, cert.normalized
    verdict_text = {
        Verdict.INVERTIBLE: "invertible",
        Verdict.UNDECIDED: "jacobian but undecided",
        Verdict.NOT_JACOBIAN: "not a jacobian map",
        Verdict.MALFORMED_ORDER: "malformed order",
    }[cert.verdict]
    doc: dict[str, Any] = {
        "schema": CERT_SCHEMA,
        "map": {"P": poly_to_doc(cert.map.P), "Q": poly_to_doc(cert.map.Q)},
        "jacobian": {
            "det": poly_to_doc(rep.det_poly),
            "is_jacobian": rep.is_jacobian,
            "det_value": None if rep.det_value is None else fraction_str(rep.det_value),
        },
        "split": {
            "linear": [fraction_str(v) for v in (split.a, split.b, split.c, split.d)],
            "constants": [fraction_str(v) for v in split.constants],
            "translated": split.has_constant_term[0] or split.has_constant_term[1],
            "p": poly_to_doc(split.p),
            "q": poly_to_doc(split.q),
        },
        "normalized": None
        if norm is None
        else {
            "pstar": poly_to_doc(norm.pstar),
            "qstar": poly_to_doc(norm.qstar),
            "Tstar": poly_to_doc(norm.Tstar),
            "Dstar": poly_to_doc(norm.Dstar),
            "det_linear": fraction_str(norm.det_linear),
        },
        "conditions": None
        if flags is None
        else {
            "theorem2": flags.theorem2_list(),
            "corollary_homogeneous": flags.corollary_homogeneous,
            "theorem4": None if flags.t3_i is None else flags.theorem4_list(),
            "mechanism_T_zero": flags.mechanism_T_zero,
            "mechanism_D_zero": flags.mechanism_D_zero,
        },
        "verdict": verdict_text,
        "via": list(cert.via),
        "mechanism": cert.mechanism,
        "notes": list(cert.notes),
    }
    return doc


def emit_certificate(cert) -> str:
    return json.dumps(certificate_to_doc(cert), sort_keys=True, indent=2) + "\n"


def load_certificate(text: str):
    """Rebuild a :class:`~jacmap.analyzer.Certificate` from its document."""
    from jacmap.analyzer import (
        Certificate,
        ConditionFlags,
        JacobianReport,
        LinearSplit,
        NormalizedMap,
        Verdict,
    )

    doc = json.loads(text)
    if doc.get("schema") != CERT_SCHEMA:
        raise ValueError(f"unsupported certificate schema {doc.get('schema')!r}")
    m = PolyMap(poly_from_doc(doc["map"]["P"]), poly_from_doc(doc["map"]["Q"]))
    j = doc["jacobian"]
    report = JacobianReport(
        det_poly=poly_from_doc(j["det"]),
        is_jacobian=j["is_jacobian"],
        det_value=None if j["det_value"] is None else Fraction(j["det_value"]),
    )
    s = doc["split"]
    a, b, c, d = (Fraction(v) for v in s["linear"])
    consts = tuple(Fraction(v) for v in s["constants"])
    split = LinearSplit(a, b, c, d, poly_from_doc(s["p"]), poly_from_doc(s["q"]), consts)
    n = doc["normalized"]
    norm: Optional[NormalizedMap] = None
    if n is not None:
        norm = NormalizedMap(
            pstar=poly_from_doc(n["pstar"]),
            qstar=poly_from_doc(n["qstar"]),
            Tstar=poly_from_doc(n["Tstar"]),
            Dstar=poly_from_doc(n["Dstar"]),
            det_linear=Fraction(n["det_linear"]),
        )
    cd = doc["conditions"]
    flags = None
    if cd is not None:
        t2 = set(cd["theorem2"])
        t4 = cd["theorem4"]
        flags = ConditionFlags(
            t2_i="i" in t2,
            t2_ii="ii" in t2,
            t2_iii="iii" in t2,
            t2_iv="iv" in t2,
            corollary_homogeneous=cd["corollary_homogeneous"],
            t3_i=None if t4 is None else "i" in t4,
            t3_ii=None if t4 is None else "ii" in t4,
            mechanism_T_zero=cd["mechanism_T_zero"],
            mechanism_D_zero=cd["mechanism_D_zero"],
        )
    verdict = {
        "invertible": Verdict.INVERTIBLE,
        "jacobian but undecided": Verdict.UNDECIDED,
        "not a jacobian map": Verdict.NOT_JACOBIAN,
        "malformed order": Verdict.MALFORMED_ORDER,
    }[doc["verdict"]]
    return Certificate(
        map=m,
        report=report,
        split=split,
        normalized=norm,
        flags=flags,
        verdict=verdict,
        via=tuple(doc["via"]),
        mechanism=doc["mechanism"],
        notes=tuple(doc["notes"]),
    )
