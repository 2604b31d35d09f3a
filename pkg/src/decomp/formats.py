"""Line-oriented text formats with bit-exact canonical writers.

All writers emit UTF-8 with LF line endings, sorted identifiers and no
trailing whitespace, so identical objects serialize identically; parsers
accept '#' comments and blank lines and report positions on errors.
"""

from __future__ import annotations

import os

from .ingest import CategorySpec, MonoidSpec, PosetSpec
from .presheaf import FinSSet, FinXiSet, SSetMap, XiSetMap


class ParseError(ValueError):
    def __init__(self, source: str, lineno: int, msg: str):
        super().__init__(f"{source}:{lineno}: {msg}")
        self.source = source
        self.lineno = lineno


def _lines(text: str, source: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if line:
            yield lineno, line


def _check_token(tok: str, source: str, lineno: int) -> str:
    if "->" in tok or ";" in tok:
        raise ParseError(source, lineno, f"identifier {tok!r} uses reserved characters")
    return tok


def _entries(body: str, source: str, lineno: int) -> dict[str, str]:
    table: dict[str, str] = {}
    body = body.strip()
    if not body:
        return table
    for chunk in body.split(";"):
        chunk = chunk.strip()
        if "->" not in chunk:
            raise ParseError(source, lineno, f"expected src->tgt, got {chunk!r}")
        a, b = chunk.split("->", 1)
        a, b = a.strip(), b.strip()
        if not a or not b or " " in a or " " in b:
            raise ParseError(source, lineno, f"bad map entry {chunk!r}")
        if a in table:
            raise ParseError(source, lineno, f"duplicate source {a!r}")
        table[a] = b
    return table


def _fmt_entries(table: dict[str, str]) -> str:
    return " ; ".join(f"{a}->{table[a]}" for a in sorted(table))


def _int(tok: str, source: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(source, lineno, f"expected an integer, got {tok!r}")


# ---------------------------------------------------------------------------
# SSET v1 / XISET v1


def write_sset(X: FinSSet) -> str:
    out = ["SSET v1", f"cap {X.cap}"]
    if X.stable_from is not None:
        out.append(f"stable {X.stable_from}")
    for k in range(X.cap + 1):
        ids = " ".join(sorted(X.levels[k]))
        out.append(f"level {k}:" + (f" {ids}" if ids else ""))
    for k in range(1, X.cap + 1):
        for i in range(k + 1):
            body = _fmt_entries(X.faces[(k, i)])
            out.append(f"d {k} {i}:" + (f" {body}" if body else ""))
    for k in range(X.cap):
        for j in range(k + 1):
            body = _fmt_entries(X.degens[(k, j)])
            out.append(f"s {k} {j}:" + (f" {body}" if body else ""))
    return "\n".join(out) + "\n"


def write_xiset(A: FinXiSet) -> str:
    out = ["XISET v1", f"cap {A.cap}"]
    if A.stable_from is not None:
        out.append(f"stable {A.stable_from}")
    for k in range(-1, A.cap + 1):
        ids = " ".join(sorted(A.levels[k]))
        out.append(f"level {k}:" + (f" {ids}" if ids else ""))
    for k in range(1, A.cap + 1):
        for i in range(k + 1):
            body = _fmt_entries(A.faces[(k, i)])
            out.append(f"d {k} {i}:" + (f" {body}" if body else ""))
    body = _fmt_entries(A.dnew)
    out.append("dnew:" + (f" {body}" if body else ""))
    for k in range(A.cap):
        for j in range(k + 1):
            body = _fmt_entries(A.degens[(k, j)])
            out.append(f"s {k} {j}:" + (f" {body}" if body else ""))
    for k in range(-1, A.cap):
        body = _fmt_entries(A.sbot[k])
        out.append(f"sbot {k}:" + (f" {body}" if body else ""))
    for k in range(-1, A.cap):
        body = _fmt_entries(A.stop[k])
        out.append(f"stop {k}:" + (f" {body}" if body else ""))
    return "\n".join(out) + "\n"


def _parse_levelled(text: str, source: str, header: str):
    cap = None
    stable = None
    levels: dict[int, list[str]] = {}
    faces: dict[tuple[int, int], dict[str, str]] = {}
    degens: dict[tuple[int, int], dict[str, str]] = {}
    dnew: dict[str, str] = {}
    sbot: dict[int, dict[str, str]] = {}
    stop: dict[int, dict[str, str]] = {}
    seen_header = False
    for lineno, line in _lines(text, source):
        if not seen_header:
            if line != header:
                raise ParseError(source, lineno, f"expected header {header!r}")
            seen_header = True
            continue
        key, _, rest = line.partition(" ")
        if key == "cap":
            cap = _int(rest.strip(), source, lineno)
        elif key == "stable":
            stable = _int(rest.strip(), source, lineno)
        elif key == "level":
            head, _, body = rest.partition(":")
            k = _int(head.strip(), source, lineno)
            ids = [_check_token(t, source, lineno) for t in body.split()]
            if k in levels:
                raise ParseError(source, lineno, f"duplicate level {k}")
            levels[k] = ids
        elif key in ("d", "s"):
            head, _, body = rest.partition(":")
            parts = head.split()
            if len(parts) != 2:
                raise ParseError(source, lineno, f"expected '{key} <k> <i>:'")
            k, i = (_int(p, source, lineno) for p in parts)
            (faces if key == "d" else degens)[(k, i)] = _entries(body, source, lineno)
        elif key.startswith("dnew"):
            body = line.partition(":")[2]
            dnew = _entries(body, source, lineno)
        elif key in ("sbot", "stop"):
            head, _, body = rest.partition(":")
            k = _int(head.strip(), source, lineno)
            (sbot if key == "sbot" else stop)[k] = _entries(body, source, lineno)
        else:
            raise ParseError(source, lineno, f"unknown directive {key!r}")
    if not seen_header:
        raise ParseError(source, 0, "empty file")
    if cap is None:
        raise ParseError(source, 0, "missing cap")
    return cap, stable, levels, faces, degens, dnew, sbot, stop


def parse_sset(text: str, source: str = "<sset>") -> FinSSet:
    cap, stable, levels, faces, degens, dnew, sbot, stop = _parse_levelled(
        text, source, "SSET v1")
    if dnew or sbot or stop:
        raise ParseError(source, 0, "interval-site directives in an SSET file")
    return FinSSet(cap, levels, faces, degens, stable)


def parse_xiset(text: str, source: str = "<xiset>") -> FinXiSet:
    cap, stable, levels, faces, degens, dnew, sbot, stop = _parse_levelled(
        text, source, "XISET v1")
    return FinXiSet(cap, levels, faces, degens, dnew, sbot, stop, stable)


# ---------------------------------------------------------------------------
# SMAP v1


def write_smap(M: SSetMap | XiSetMap, dom_path: str, cod_path: str) -> str:
    out = ["SMAP v1", f"dom {dom_path}", f"cod {cod_path}"]
    kmin = -1 if isinstance(M, XiSetMap) else 0
    for k in range(kmin, M.dom.cap + 1):
        body = _fmt_entries(M.components[k])
        out.append(f"level {k}:" + (f" {body}" if body else ""))
    return "\n".join(out) + "\n"


def parse_smap_text(text: str, source: str = "<smap>"):
    dom_path = cod_path = None
    comps: dict[int, dict[str, str]] = {}
    seen_header = False
    for lineno, line in _lines(text, source):
        if not seen_header:
            if line != "SMAP v1":
                raise ParseError(source, lineno, "expected header 'SMAP v1'")
            seen_header = True
            continue
        key, _, rest = line.partition(" ")
        if key == "dom":
            dom_path = rest.strip()
        elif key == "cod":
            cod_path = rest.strip()
        elif key == "level":
            head, _, body = rest.partition(":")
            comps[_int(head.strip(), source, lineno)] = _entries(body, source, lineno)
        else:
            raise ParseError(source, lineno, f"unknown directive {key!r}")
    if dom_path is None or cod_path is None:
        raise ParseError(source, 0, "missing dom/cod")
    return dom_path, cod_path, comps


def load_smap(path: str) -> SSetMap | XiSetMap:
    with open(path, encoding="utf-8") as fh:
        dom_path, cod_path, comps = parse_smap_text(fh.read(), path)
    base = os.path.dirname(os.path.abspath(path))
    dom = load(os.path.join(base, dom_path))
    cod = load(os.path.join(base, cod_path))
    if isinstance(dom, FinXiSet) and isinstance(cod, FinXiSet):
        return XiSetMap(dom, cod, comps)
    if isinstance(dom, FinSSet) and isinstance(cod, FinSSet):
        return SSetMap(dom, cod, comps)
    raise ParseError(path, 0, "dom and cod files are of different kinds")


# ---------------------------------------------------------------------------
# POSET v1 / MONOID v1 / CAT v1


def write_poset(spec: PosetSpec) -> str:
    out = ["POSET v1", "elements: " + " ".join(sorted(spec.elements))]
    out += [f"le {a} {b}" for a, b in spec.covers()]
    return "\n".join(out) + "\n"


def parse_poset(text: str, source: str = "<poset>") -> PosetSpec:
    elements: list[str] = []
    pairs: list[tuple[str, str]] = []
    seen_header = False
    for lineno, line in _lines(text, source):
        if not seen_header:
            if line != "POSET v1":
                raise ParseError(source, lineno, "expected header 'POSET v1'")
            seen_header = True
            continue
        key, _, rest = line.partition(" ")
        if key == "elements:":
            elements = rest.split()
        elif key == "le":
            parts = rest.split()
            if len(parts) != 2:
                raise ParseError(source, lineno, "expected 'le <a> <b>'")
            pairs.append((parts[0], parts[1]))
        else:
            raise ParseError(source, lineno, f"unknown directive {key!r}")
    from .ingest import SpecError
    try:
        return PosetSpec.from_pairs(elements, pairs)
    except SpecError as exc:
        raise ParseError(source, 0, str(exc))


def write_monoid(spec: MonoidSpec) -> str:
    out = ["MONOID v1",
           "elements: " + " ".join(sorted(spec.elements)),
           f"unit: {spec.unit}"]
    out += [f"mul {a} {b}: {c}" for (a, b), c in sorted(spec.table.items())]
    return "\n".join(out) + "\n"


def parse_monoid(text: str, source: str = "<monoid>") -> MonoidSpec:
    elements: list[str] = []
    unit = None
    table: dict[tuple[str, str], str] = {}
    seen_header = False
    for lineno, line in _lines(text, source):
        if not seen_header:
            if line != "MONOID v1":
                raise ParseError(source, lineno, "expected header 'MONOID v1'")
            seen_header = True
            continue
        key, _, rest = line.partition(" ")
        if key == "elements:":
            elements = rest.split()
        elif key == "unit:":
            unit = rest.strip()
        elif key == "mul":
            head, _, val = rest.partition(":")
            parts = head.split()
            if len(parts) != 2 or not val.strip():
                raise ParseError(source, lineno, "expected 'mul <a> <b>: <c>'")
            table[(parts[0], parts[1])] = val.strip()
        else:
            raise ParseError(source, lineno, f"unknown directive {key!r}")
    if unit is None:
        raise ParseError(source, 0, "missing unit")
    from .ingest import SpecError
    try:
        return MonoidSpec.build(elements, unit, table)
    except SpecError as exc:
        raise ParseError(source, 0, str(exc))


def write_category(spec: CategorySpec) -> str:
    out = ["CAT v1", "objects: " + " ".join(sorted(spec.objects))]
    out += [f"id {x}: {spec.identities[x]}" for x in sorted(spec.objects)]
    for f in sorted(spec.arrows):
        if spec.is_identity(f):
            continue
        s, t = spec.arrows[f]
        out.append(f"arrow {f}: {s} -> {t}")
    out += [f"compose {f} {g}: {h}" for (f, g), h in sorted(spec.comp.items())]
    return "\n".join(out) + "\n"


def parse_category(text: str, source: str = "<cat>") -> CategorySpec:
    objects: list[str] = []
    arrows: dict[str, tuple[str, str]] = {}
    idents: dict[str, str] = {}
    comp: dict[tuple[str, str], str] = {}
    seen_header = False
    for lineno, line in _lines(text, source):
        if not seen_header:
            if line != "CAT v1":
                raise ParseError(source, lineno, "expected header 'CAT v1'")
            seen_header = True
            continue
        key, _, rest = line.partition(" ")
        if key == "objects:":
            objects = rest.split()
        elif key == "id":
            head, _, val = rest.partition(":")
            if not head.strip() or not val.strip():
                raise ParseError(source, lineno, "expected 'id <x>: <ix>'")
            idents[head.strip()] = val.strip()
        elif key == "arrow":
            head, _, sig = rest.partition(":")
            if "->" not in sig:
                raise ParseError(source, lineno, "expected 'arrow <f>: <x> -> <y>'")
            s, t = (p.strip() for p in sig.split("->", 1))
            arrows[head.strip()] = (s, t)
        elif key == "compose":
            head, _, val = rest.partition(":")
            parts = head.split()
            if len(parts) != 2 or not val.strip():
                raise ParseError(source, lineno, "expected 'compose <f> <g>: <h>'")
            comp[(parts[0], parts[1])] = val.strip()
        else:
            raise ParseError(source, lineno, f"unknown directive {key!r}")
    for x, i in idents.items():
        arrows.setdefault(i, (x, x))
    from .ingest import SpecError
    try:
        return CategorySpec.build(objects, arrows, idents, comp)
    except SpecError as exc:
        raise ParseError(source, 0, str(exc))


# ---------------------------------------------------------------------------
# sniffing loaders


_PARSERS = {
    "SSET v1": parse_sset,
    "XISET v1": parse_xiset,
    "POSET v1": parse_poset,
    "MONOID v1": parse_monoid,
    "CAT v1": parse_category,
}


def parse_any(text: str, source: str = "<input>"):
    for lineno, line in _lines(text, source):
        parser = _PARSERS.get(line)
        if parser is None:
            raise ParseError(source, lineno, f"unknown format header {line!r}")
        return parser(text, source)
    raise ParseError(source, 0, "empty file")


def load(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse_any(fh.read(), path)


def write_any(obj) -> str:
    if isinstance(obj, FinXiSet):
        return write_xiset(obj)
    if isinstance(obj, FinSSet):
        return write_sset(obj)
    if isinstance(obj, PosetSpec):
        return write_poset(obj)
    if isinstance(obj, MonoidSpec):
        return write_monoid(obj)
    if isinstance(obj, CategorySpec):
        return write_category(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def save(obj, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(write_any(obj))
