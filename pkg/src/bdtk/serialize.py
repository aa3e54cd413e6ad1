"""JSON interchange for every value type.

Scalar encodings: exact rational complex numbers are 4-tuples
[re_num, re_den, im_num, im_den]; float-tagged scalars are [re, im] pairs;
exact roots-of-unity combinations that are not rational complex use
{"order": n, "terms": [[k, num, den], ...]} so that round trips stay exact.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .arith import INF, GsRational, Residue, Supernatural
from .bd import BdElement, bd_element
from .bdt import BdtElement
from .calculus import CertifiedElement
from .compact import CompactMatrix
from .derivations import DerivationSpec
from .index import IndexResult
from .scalars import Scalar
from .ulc import UlcFunction, ulc


def encode_scalar(z: Scalar):
    if not z.is_exact:
        return [z.f.real, z.f.imag]
    g = z.gauss_parts()
    if g is not None:
        re, im = g
        return [re.numerator, re.denominator, im.numerator, im.denominator]
    return {
        "order": z.n,
        "terms": [[k, c.numerator, c.denominator] for k, c in sorted(z.c.items())],
    }


def decode_scalar(obj) -> Scalar:
    if isinstance(obj, dict):
        n = int(obj["order"])
        terms = {int(k): Fraction(int(p), int(q)) for k, p, q in obj["terms"]}
        return Scalar._exact(n, terms)
    if isinstance(obj, (int, float)):
        return Scalar.from_number(obj if isinstance(obj, int) else float(obj))
    if len(obj) == 2:
        return Scalar.from_complex(complex(obj[0], obj[1]))
    if len(obj) == 4:
        return Scalar.from_fraction(Fraction(int(obj[0]), int(obj[1])),
                                    Fraction(int(obj[2]), int(obj[3])))
    raise ValueError(f"bad scalar encoding: {obj!r}")


def encode_ulc(f: UlcFunction) -> dict:
    out = {"period": f.period, "values": [encode_scalar(v) for v in f.values]}
    if not f.is_exact:
        out["float"] = True
    return out


def decode_ulc(obj) -> UlcFunction:
    vals = [decode_scalar(v) for v in obj["values"]]
    if len(vals) != int(obj["period"]):
        raise ValueError("period does not match value count")
    return ulc(vals)


def encode_supernatural(S: Supernatural) -> list:
    return [[p, "inf" if e == INF else e] for p, e in S.exponents.items()]


def decode_supernatural(obj) -> Supernatural:
    return Supernatural({int(p): (INF if e == "inf" else int(e)) for p, e in obj})


def encode_residue(x: Residue) -> list:
    return [x.value, x.level]


def decode_residue(obj) -> Residue:
    return Residue(int(obj[0]), int(obj[1]))


def encode_gs_rational(q: GsRational) -> list:
    return [q.numerator, q.denominator]


def decode_gs_rational(obj) -> GsRational:
    return GsRational(int(obj[0]), int(obj[1]))


def encode_bd(b: BdElement) -> dict:
    return {
        "S": encode_supernatural(b.S),
        "bands": [[n, encode_ulc(f)] for n, f in sorted(b.bands.items())],
    }


def decode_bd(obj) -> BdElement:
    S = decode_supernatural(obj["S"])
    return bd_element(S, {int(n): decode_ulc(f) for n, f in obj["bands"]})


def encode_compact(c: CompactMatrix) -> dict:
    return {
        "entries": [[k, s, encode_scalar(v)] for (k, s), v in sorted(c.entries.items())]
    }


def decode_compact(obj) -> CompactMatrix:
    return CompactMatrix({(int(k), int(s)): decode_scalar(v) for k, s, v in obj["entries"]})


def encode_bdt(a: BdtElement) -> dict:
    return {"symbol": encode_bd(a.symbol), "compact": encode_compact(a.compact)}


def decode_bdt(obj) -> BdtElement:
    return BdtElement(decode_bd(obj["symbol"]), decode_compact(obj["compact"]))


def encode_derivation(d: DerivationSpec) -> dict:
    return {
        "gamma": encode_scalar(d.gamma),
        "b": encode_bd(d.symbol_part),
        "c": encode_compact(d.compact_part),
    }


def decode_derivation(obj) -> DerivationSpec:
    return DerivationSpec(
        decode_scalar(obj["gamma"]), decode_bd(obj["b"]), decode_compact(obj["c"])
    )


def encode_certified(ce: CertifiedElement) -> dict:
    val = ce.value
    if isinstance(val, BdtElement):
        enc = encode_bdt(val)
    elif isinstance(val, BdElement):
        enc = encode_bd(val)
    else:
        raise TypeError(f"cannot encode {type(val).__name__}")
    return {"value": enc, "residual_bound": ce.residual_bound, "method": ce.method}


def encode_index_result(r: IndexResult) -> dict:
    return {
        "index": r.index,
        "kernel_dims": [list(t) for t in r.kernel_dims],
        "stabilized": r.stabilized,
    }


def decode_element(obj):
    """Sniff the payload type: band element, Toeplitz-form element, compact
    matrix or derivation."""
    if "symbol" in obj and "compact" in obj:
        return decode_bdt(obj)
    if "bands" in obj:
        return decode_bd(obj)
    if "entries" in obj:
        return decode_compact(obj)
    if "gamma" in obj:
        return decode_derivation(obj)
    raise ValueError("unrecognized element payload")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def loads(text: str):
    return json.loads(text)
