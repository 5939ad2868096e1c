"""Canonical JSON reading and writing, digests and fixture lookup."""
from __future__ import annotations

import gzip
import hashlib
import json
import os
from pathlib import Path

import numpy as np

from .complex import Square, SimplicialComplex

FIXTURE_ENV = "KF_FIXTURES"


def canonical(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), default=_default)


def _default(o):
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.bool_,)):
        return bool(o)
    if isinstance(o, (set, frozenset, tuple)):
        return list(o)
    raise TypeError("not serialisable: %r" % (o,))


def digest(obj):
    return hashlib.sha256(canonical(obj).encode()).hexdigest()


def file_digest(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def fixture_dir():
    env = os.environ.get(FIXTURE_ENV)
    return Path(env) if env else Path(__file__).parent / "data"


def resolve(path):
    """Existing paths win; otherwise look the name up in the fixture directory."""
    p = Path(path)
    if p.exists():
        return p
    q = fixture_dir() / p.name
    if q.exists():
        return q
    raise FileNotFoundError(path)


def _open(path, mode):
    return gzip.open(path, mode + "t") if str(path).endswith(".gz") else open(path, mode)


def load_json(path):
    with _open(resolve(path), "r") as f:
        return json.load(f)


def dump_json(obj, path):
    text = canonical(obj)
    with _open(path, "w") as f:
        f.write(text)
        f.write("\n")
    return hashlib.sha256(text.encode()).hexdigest()


def load_complex(path):
    return SimplicialComplex.from_json(load_json(path))


def sigma_to_json(sigma):
    K = sigma.complex
    return {
        "vertices": [str(v) for v in K.vertices],
        "maximal_simplices": [[K.vertices[i] for i in r] for r in K.maximal_simplices()],
        "tags": list(sigma.tags),
        "regions": [int(x) for x in sigma.region],
        "cores": [list(c.cycle) for c in sigma.cores],
        "markings": sigma.markings,
        "stage": sigma.stage,
    }


def sigma_from_json(data):
    from .assembly import RegionTaggedComplex

    K = SimplicialComplex.from_json(data)
    region = np.asarray(data["regions"], dtype=np.int16)
    if len(region) != len(K.faces(3)):
        raise ValueError("region list does not match the tetrahedra")
    cores = [Square.canonical(c) for c in data["cores"]]
    return RegionTaggedComplex(K, list(data["tags"]), region, cores, [],
                               data.get("markings", []), data.get("stage", "raw"))
