"""Text formats: fractions, weights, windows, support sets, module tags and reports."""

import json
from fractions import Fraction

from .descriptors import ModuleDescriptor, parse_descriptor
from .errors import UnknownTag
from .geometry import ShiftedCone, SupportSet

SCHEMA = "wittsuper-report/1"


def fmt_fraction(c):
    return str(Fraction(c))


def parse_fraction(text):
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def fmt_weight(w):
    return [fmt_fraction(c) for c in w]


def parse_weight(items):
    return tuple(parse_fraction(c) for c in items)


# -- windows -------------------------------------------------------------------------


def parse_window(text, m):
    """``"2"`` (radius in every coordinate) or ``"-1:1,0:2"`` (one interval per coordinate)."""
    text = str(text).strip()
    if ":" not in text:
        r = int(text)
        if r < 0:
            raise ValueError("window radius must be non-negative")
        return tuple((-r, r) for _ in range(m))
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != m:
        raise ValueError(f"window has {len(parts)} intervals, expected {m}")
    box = []
    for p in parts:
        lo, hi = (int(x) for x in p.split(":"))
        if lo > hi:
            raise ValueError(f"empty interval {p!r}")
        box.append((lo, hi))
    return tuple(box)


def fmt_window(box):
    return ",".join(f"{lo}:{hi}" for lo, hi in box)


# -- support sets ----------------------------------------------------------------------


def cone_to_json(c):
    return {
        "base": fmt_weight(c.base),
        "free": [fmt_weight(v) for v in c.free],
        "plus": [fmt_weight(v) for v in c.plus],
    }


def support_to_json(S):
    return [cone_to_json(c) for c in S.components]


def support_from_json(data):
    """A list of ``{"base": [...], "free": [[...]], "plus": [[...]]}`` components."""
    if isinstance(data, dict):
        data = [data]
    comps = []
    for k, item in enumerate(data):
        try:
            base = parse_weight(item["base"])
        except KeyError as exc:
            raise ValueError(f"support[{k}].base is missing") from exc
        free = tuple(parse_weight(v) for v in item.get("free", []))
        plus = tuple(parse_weight(v) for v in item.get("plus", []))
        for name, vecs in (("free", free), ("plus", plus)):
            for j, v in enumerate(vecs):
                if len(v) != len(base):
                    raise ValueError(f"support[{k}].{name}[{j}] has the wrong length")
        comps.append(ShiftedCone(base, free, plus))
    if not comps:
        raise ValueError("support has no components")
    return SupportSet(tuple(comps))


def load_support(path):
    with open(path) as fh:
        return support_from_json(json.load(fh))


# -- descriptors and tags ----------------------------------------------------------------


def descriptor_to_string(d):
    return d.to_string()


def parse_gl_tag(text, m, n):
    """Module tags over gl_{m,n}.

    ``trivial``, ``pitrivial``, ``str``, ``pistr``, ``fund:<P'>:<level>`` (``P'`` a
    K_{n,m} descriptor string) and ``kac:<w_1,...,w_{m+n}>`` (simple top of the Kac
    module of a gl^0 character, certified non-fundamental).
    """
    from .classify import tag_fundamental, tag_nonfundamental, tag_str, tag_trivial
    from .glreps import gl0_character, kac_module, simple_top

    s = text.strip()
    if s == "trivial":
        return tag_trivial(m, n)
    if s == "pitrivial":
        return tag_trivial(m, n, 1)
    if s == "str":
        return tag_str(m, n)
    if s == "pistr":
        return tag_str(m, n, 1)
    if s.startswith("fund:"):
        try:
            _, desc, level = s.split(":")
        except ValueError as exc:
            raise UnknownTag(f"expected fund:<descriptor>:<level>, got {text!r}") from exc
        return tag_fundamental(parse_descriptor(desc, n, m), parse_fraction(level), m, n)
    if s.startswith("kac:"):
        lam = tuple(parse_fraction(c) for c in s[4:].split(","))
        if len(lam) != m + n:
            raise UnknownTag(f"character {text!r} needs {m + n} entries")
        mod = simple_top(kac_module(gl0_character(m, n, lam)))
        from .classify import certify_nonfundamental

        if not certify_nonfundamental(mod):
            raise UnknownTag(f"{text!r} could not be certified non-fundamental")
        return tag_nonfundamental(mod, s)
    raise UnknownTag(f"unknown module tag {text!r}")


def parse_k_tag(text, spec):
    """``trivial``, ``scalar:<c>`` or ``natural:<block index>`` for the Levi factor."""
    from .tensor import k_natural_module, k_scalar_module

    s = text.strip()
    if s == "trivial":
        return k_scalar_module(spec, 0)
    if s.startswith("scalar:"):
        return k_scalar_module(spec, parse_fraction(s[7:]))
    if s.startswith("natural:"):
        return k_natural_module(spec, spec.blocks[int(s[8:])])
    raise UnknownTag(f"unknown k-module tag {text!r}")


# -- reports -------------------------------------------------------------------------------


def _clean(obj):
    if isinstance(obj, Fraction):
        return fmt_fraction(obj)
    if isinstance(obj, dict):
        return {str(k): _clean(obj[k]) for k in sorted(obj, key=str)}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, float) and obj == float("inf"):
        return "inf"
    return obj


def dump_report(command, params, body, ok):
    """Deterministic JSON text: schema header first, then sorted keys, fixed indentation."""
    doc = {"schema": SCHEMA, "command": command, "ok": ok, "params": _clean(params), "result": _clean(body)}
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


__all__ = [
    "SCHEMA",
    "ModuleDescriptor",
    "dump_report",
    "fmt_fraction",
    "fmt_weight",
    "fmt_window",
    "load_support",
    "parse_descriptor",
    "parse_fraction",
    "parse_gl_tag",
    "parse_k_tag",
    "parse_weight",
    "parse_window",
    "support_from_json",
    "support_to_json",
]
