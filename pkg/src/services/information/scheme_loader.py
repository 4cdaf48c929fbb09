"""
Scheme loader - plain-text DmScheme files

    # comments run to end of line
    mode simultaneous
    sizes Q=1 S=2 U1=2 V1=1 U2=2 V2=1 X1=2 X2=2 Y1=2 Y2=2
    p_q 1
    p_s 0.5 0.5
    u1 0.5 0.5
       0.5 0.5
    ...
    f1 0 1 1 0
    channel ...

Each table name is followed by its entries flattened in row-major order of the
layout documented on DmScheme; entries may continue over several lines.
"""
import re
from pathlib import Path
from typing import Dict, List

import numpy as np

from src.models.errors import SchemeValidationError
from src.services.information.scheme_service import ALPHABETS, DmScheme, EncodingMode

TABLES = ("p_q", "p_s", "u1", "v1", "u2", "v2", "f1", "f2", "channel")
_SIZE_PATTERN = re.compile(r"^([A-Z][0-9]?)\s*=\s*(\d+)$")


def parse_scheme_text(raw_text: str) -> DmScheme:
    mode = EncodingMode.SIMULTANEOUS
    sizes: Dict[str, int] = {}
    entries: Dict[str, List[str]] = {}
    current = None

    for lineno, raw_line in enumerate(raw_text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0].lower()
        if head == "mode":
            try:
                mode = EncodingMode(tokens[1].lower())
            except (IndexError, ValueError):
                raise SchemeValidationError(f"line {lineno}: unknown mode {tokens[1:]}", table="mode")
            current = None
        elif head == "sizes":
            for token in tokens[1:]:
                match = _SIZE_PATTERN.match(token)
                if not match or match.group(1) not in ALPHABETS:
                    raise SchemeValidationError(f"line {lineno}: bad size entry {token!r}", table="sizes")
                sizes[match.group(1)] = int(match.group(2))
            current = None
        elif head in TABLES:
            current = head
            entries.setdefault(current, []).extend(tokens[1:])
        elif current is not None:
            entries[current].extend(tokens)
        else:
            raise SchemeValidationError(f"line {lineno}: unexpected {tokens[0]!r}")

    missing = [n for n in ALPHABETS if n not in sizes]
    if missing:
        raise SchemeValidationError(f"missing alphabet sizes {missing}", table="sizes")
    absent = [t for t in TABLES if t not in entries]
    if absent:
        raise SchemeValidationError(f"missing tables {absent}")

    template = DmScheme(sizes=sizes, p_q=None, p_s=None, u1=None, v1=None, u2=None, v2=None,
                        f1=None, f2=None, channel=None, mode=mode)
    tables = {}
    for name, shape in template.expected_shapes().items():
        values = entries[name]
        if len(values) != int(np.prod(shape)):
            raise SchemeValidationError(f"{len(values)} entries, expected {int(np.prod(shape))}", table=name)
        try:
            if name in ("f1", "f2"):
                tables[name] = np.array([int(v) for v in values], dtype=int).reshape(shape)
            else:
                tables[name] = np.array([float(v) for v in values], dtype=float).reshape(shape)
        except ValueError as error:
            raise SchemeValidationError(f"non-numeric entry: {error}", table=name)
    return DmScheme(sizes=sizes, mode=mode, **tables)


def read_scheme_file(file_path: Path) -> DmScheme:
    content = Path(file_path).read_text(encoding="utf-8")
    return parse_scheme_text(content)
