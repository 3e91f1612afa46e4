"""JSON model files: a Γ-group, optional places and an optional permutation embedding.

Element ids in ``action``, ``decomposition`` and the like refer to the
canonical numbering produced by :func:`group_core.build_group`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import cohomology as co
from . import gamma_scheme as gs
from . import group_core as gc
from .errors import ValidationError

NAMED = {
    "C1": lambda: gc.cyclic(1),
    "S3": lambda: gc.symmetric(3),
    "S4": lambda: gc.symmetric(4),
    "A4": lambda: gc.alternating(4),
    "A5": lambda: gc.alternating(5),
    "V4": gc.klein_four,
    "Q8": gc.quaternion,
    "D8": lambda: gc.dihedral(4),
}


@dataclass
class Model:
    gg: gs.GammaGroup
    places: list = field(default_factory=list)
    embedding: Optional[list] = None
    name: Optional[str] = None


def group_from_json(spec) -> gc.FiniteGroup:
    if not isinstance(spec, dict):
        raise ValidationError("group spec must be a JSON object")
    if "cyclic" in spec:
        return gc.cyclic(int(spec["cyclic"]))
    if "named" in spec:
        try:
            return NAMED[spec["named"]]()
        except KeyError:
            raise ValidationError(f"unknown named group {spec['named']!r}")
    return gc.build_group(spec)


def model_from_json(doc: dict) -> Model:
    if "group" not in doc:
        raise ValidationError("model needs a 'group'")
    G = group_from_json(doc["group"])
    gamma = group_from_json(doc.get("gamma", {"cyclic": 1}))
    gg = gs.make_gamma_group(G, gamma, act=doc.get("action"), chi=doc.get("chi"),
                             chi_modulus=doc.get("chi_modulus"), tame=doc.get("tame", True),
                             name=doc.get("name"))
    places = [co.make_place(gamma, p.get("label", f"v{i}"), p["q"], p["decomposition"],
                            p["inertia"], p["tame_generator"], p["frobenius"])
              for i, p in enumerate(doc.get("places", []))]
    embedding = None
    if "embedding" in doc:
        emb = doc["embedding"]
        degree = int(emb["degree"])
        embedding = [gc.parse_cycles(s, degree) if isinstance(s, str) else tuple(s)
                     for s in emb["permutations"]]
    return Model(gg, places, embedding, doc.get("name"))


def load_model(path) -> Model:
    """Read a model file, or a built-in model written ``builtin:NAME``."""
    text = str(path)
    if text.startswith("builtin:"):
        from .catalog import builtin_model
        return builtin_model(text.split(":", 1)[1])
    p = Path(text)
    if not p.exists():
        raise ValidationError(f"model file {text} does not exist")
    try:
        doc = json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"model file {text} is not valid JSON: {exc}")
    return model_from_json(doc)


def model_to_json(gg: gs.GammaGroup) -> dict:
    doc = {"group": {"table": [list(r) for r in gg.G.table]},
           "gamma": {"table": [list(r) for r in gg.gamma.table]},
           "action": [list(p) for p in gg.act],
           "chi": list(gg.chi),
           "chi_modulus": gg.chi_modulus,
           "tame": gg.tame}
    if gg.name:
        doc["name"] = gg.name
    return doc
