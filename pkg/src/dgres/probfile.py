"""Problem-file parsing: field, algebra tower, and named modules.

Format (UTF-8, '#' comments, blank lines ignored):

    field rationals            # or: field prime 101

    [algebra]
    base y 2                   # A-generator: name degree
    ext  e 3                   # B-only generator
    d e = y                    # differential, any expression in earlier syntax

    [module K]
    generator e0 0
    generator e1 3
    entry e1 e0 = x            # coefficient of e0 in the differential of e1

    [options]
    max-degree = 8

Expressions: terms joined by + or -, each a '*'-separated product of scalar
coefficients (integers or fractions like 1/2) and generator powers g^k.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .algebra import DGAlgebra
from .errors import ParseError
from .modules import SemifreeModule
from .scalars import Field

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()])|(?P<bad>\S))")


def tokenize_expr(text: str, line_no: int, col_offset: int):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        col = col_offset + m.start(m.lastgroup) + 1
        if m.lastgroup == "bad":
            raise ParseError(f"unexpected character {m.group('bad')!r}", line_no, col)
        tokens.append((m.lastgroup, m.group(m.lastgroup), col))
        pos = m.end()
    return tokens


def parse_expression(text: str, line_no: int = 0, col_offset: int = 0):
    """Parse to raw term data [(Fraction, {name: exp}), ...]."""
    tokens = tokenize_expr(text, line_no, col_offset)
    if not tokens:
        raise ParseError("empty expression", line_no, col_offset + 1)
    terms = []
    i = 0

    def expect_factorish(idx):
        if idx >= len(tokens):
            raise ParseError("expression ends mid-term", line_no,
                             tokens[-1][2] + len(tokens[-1][1]))
        return tokens[idx]

    while i < len(tokens):
        sign = 1
        while i < len(tokens) and tokens[i][0] == "op" and tokens[i][1] in "+-":
            if tokens[i][1] == "-":
                sign = -sign
            i += 1
        coeff = Fraction(sign)
        exps: dict[str, int] = {}
        expect_factor = True
        while True:
            kind, val, col = expect_factorish(i)
            if kind == "num":
                coeff *= Fraction(val)
                i += 1
            elif kind == "name":
                i += 1
                power = 1
                if i < len(tokens) and tokens[i][0] == "op" and tokens[i][1] == "^":
                    i += 1
                    k2, v2, c2 = expect_factorish(i)
                    if k2 != "num" or "/" in v2:
                        raise ParseError("exponent must be a positive integer", line_no, c2)
                    power = int(v2)
                    i += 1
                exps[val] = exps.get(val, 0) + power
            else:
                raise ParseError(f"expected a coefficient or generator, found {val!r}", line_no, col)
            expect_factor = False
            if i < len(tokens) and tokens[i][0] == "op" and tokens[i][1] == "*":
                i += 1
                expect_factor = True
                continue
            break
        if expect_factor:
            raise ParseError("dangling '*'", line_no, tokens[i - 1][2])
        terms.append((coeff, exps))
        if i < len(tokens):
            kind, val, col = tokens[i]
            if not (kind == "op" and val in "+-"):
                raise ParseError(f"expected '+' or '-', found {val!r}", line_no, col)
    return terms


@dataclass
class ProblemFile:
    field: Field
    algebra: DGAlgebra
    modules: dict = dc_field(default_factory=dict)   # name -> SemifreeModule
    options: dict = dc_field(default_factory=dict)
    source_text: str = ""


def parse_problem(text: str) -> ProblemFile:
    field = None
    base: list[tuple[str, int]] = []
    ext: list[tuple[str, int]] = []
    diffs: dict[str, list] = {}
    modules_raw: dict[str, dict] = {}
    options: dict[str, str] = {}
    section = None
    current_module = None
    saw_algebra = False

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        indent = len(line) - len(line.lstrip())
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise ParseError("unterminated section header", line_no, indent + len(stripped))
            name = stripped[1:-1].strip()
            if name == "algebra":
                section = "algebra"
                saw_algebra = True
            elif name.startswith("module"):
                parts = name.split()
                if len(parts) != 2:
                    raise ParseError("module section needs a name: [module NAME]", line_no, indent + 1)
                section = "module"
                current_module = parts[1]
                if current_module in modules_raw:
                    raise ParseError(f"duplicate module {current_module}", line_no, indent + 1)
                modules_raw[current_module] = {"basis": [], "entries": {}}
            elif name == "options":
                section = "options"
            else:
                raise ParseError(f"unknown section [{name}]", line_no, indent + 1)
            continue
        words = stripped.split()
        if section is None:
            if words[0] == "field":
                if len(words) == 2 and words[1] == "rationals":
                    field = Field.rationals()
                elif len(words) == 3 and words[1] == "prime":
                    try:
                        field = Field.prime(int(words[2]))
                    except ValueError:
                        raise ParseError(f"bad prime {words[2]!r}", line_no, line.index(words[2]) + 1)
                else:
                    raise ParseError("expected 'field rationals' or 'field prime P'", line_no, indent + 1)
            else:
                raise ParseError(f"unexpected directive {words[0]!r} before any section", line_no, indent + 1)
            continue
        if section == "algebra":
            if words[0] in ("base", "ext"):
                if len(words) != 3:
                    raise ParseError(f"expected '{words[0]} NAME DEGREE'", line_no, indent + 1)
                try:
                    deg = int(words[2])
                except ValueError:
                    raise ParseError(f"bad degree {words[2]!r}", line_no, line.index(words[2]) + 1)
                (base if words[0] == "base" else ext).append((words[1], deg))
            elif words[0] == "d":
                if "=" not in line:
                    raise ParseError("differential line needs '='", line_no, indent + 1)
                lhs, rhs = line.split("=", 1)
                gname = lhs.split()[1] if len(lhs.split()) == 2 else None
                if gname is None:
                    raise ParseError("expected 'd NAME = EXPR'", line_no, indent + 1)
                diffs[gname] = parse_expression(rhs, line_no, line.index("=") + 1)
            else:
                raise ParseError(f"unknown algebra directive {words[0]!r}", line_no, indent + 1)
            continue
        if section == "module":
            mod = modules_raw[current_module]
            if words[0] == "generator":
                if len(words) != 3:
                    raise ParseError("expected 'generator NAME DEGREE'", line_no, indent + 1)
                try:
                    deg = int(words[2])
                except ValueError:
                    raise ParseError(f"bad degree {words[2]!r}", line_no, line.index(words[2]) + 1)
                mod["basis"].append((words[1], deg))
            elif words[0] == "entry":
                if "=" not in line:
                    raise ParseError("entry line needs '='", line_no, indent + 1)
                lhs, rhs = line.split("=", 1)
                parts = lhs.split()
                if len(parts) != 3:
                    raise ParseError("expected 'entry LAMBDA MU = EXPR'", line_no, indent + 1)
                _, lam, mu = parts
                mod["entries"][(mu, lam)] = parse_expression(rhs, line_no, line.index("=") + 1)
            else:
                raise ParseError(f"unknown module directive {words[0]!r}", line_no, indent + 1)
            continue
        if section == "options":
            if "=" not in line:
                raise ParseError("option line needs '='", line_no, indent + 1)
            key, val = (s.strip() for s in line.split("=", 1))
            options[key] = val

    if field is None:
        raise ParseError("missing 'field' declaration", 1, 1)
    if not saw_algebra:
        raise ParseError("missing [algebra] section", 1, 1)
    algebra = DGAlgebra(field, base_gens=base, ext_gens=ext, diff_terms=diffs)
    modules = {}
    for name, data in modules_raw.items():
        known = {n for n, _ in data["basis"]}
        for (mu, lam) in data["entries"]:
            if mu not in known or lam not in known:
                raise ParseError(f"module {name}: entry references unknown generator", 1, 1)
        modules[name] = SemifreeModule(algebra, data["basis"], data["entries"])
    return ProblemFile(field, algebra, modules, options, text)


def load_problem(path: str) -> ProblemFile:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_problem(fh.read())
