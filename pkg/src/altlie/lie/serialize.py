"""Structure-constants JSON."""
from __future__ import annotations

import json

from .algebra import format_scalar, label_text


def structure_dict(alg, window=None):
    if alg.is_finite:
        basis = list(alg.basis)
    else:
        basis = alg.window_basis(window if window is not None else 3)
    brackets = []
    for i, a in enumerate(basis):
        for b in basis[i + 1:]:
            value = alg.bracket_basis(a, b)
            if not value:
                continue
            elem = alg.element(value)
            brackets.append({
                "i": label_text(a),
                "j": label_text(b),
                "value": {label_text(k): format_scalar(v) for k, v in elem.ordered_items()},
            })
    return {"basis": [label_text(b) for b in basis], "brackets": brackets}


def structure_json(alg, window=None):
    return json.dumps(structure_dict(alg, window), ensure_ascii=False, indent=2) + "\n"
