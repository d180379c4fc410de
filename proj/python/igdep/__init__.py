"""Interaction grammar parser with dependency extraction."""

import json

from ._core import (
    ORACLE_NODE_CAP,
    DependencyGraph,
    Grammar,
    GrammarSyntaxError,
    IgdepError,
    IndexOutOfRange,
    LimitExceeded,
    Model,
    OracleCapExceeded,
    Polarity,
    UnknownPolarityToken,
    UnknownWord,
    ValidationError,
    compose,
    compose_multiset,
    is_saturation_valid,
    load_grammar,
    load_grammar_string,
    oracle_parse,
    tokenize,
    toy_grammar,
)
from ._core import parse as _parse

__version__ = "0.1.0"


def parse(sentence, grammar=None, **kwargs):
    """Models of `sentence`; uses the bundled toy grammar when none is given."""
    return _parse(grammar if grammar is not None else toy_grammar(), sentence, **kwargs)


def metrics(graph):
    """Metrics record of a dependency graph as a dict."""
    return json.loads(graph.metrics())


def model_json(model):
    return json.loads(model.to_json())


def graph_json(graph):
    return json.loads(graph.to_json())
