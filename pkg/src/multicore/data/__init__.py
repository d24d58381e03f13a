"""Bundled networks."""
from importlib.resources import files

from ..graph import WeightedGraph, parse_edge_list


def karate_path():
    return files(__name__) / "karate.edges"


def karate() -> WeightedGraph:
    """Zachary's karate club, weighted; labels "1".."34" as in the 1977 paper."""
    return parse_edge_list(karate_path().read_text(encoding="utf-8"))
