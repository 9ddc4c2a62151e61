from __future__ import annotations

import importlib
from collections.abc import Callable
from typing import Any

import qdisttest


def _normalize_string(s: str) -> str:
    return s.lower().replace("-", "").replace("_", "").replace(" ", "")


def _resolver(
    query: Any | str,
    classes: list,
    base_cls: type | None = None,
    return_initialize: bool = True,
    **kwargs,
) -> Callable | Any:
    # query is a string
    if isinstance(query, str):
        for cls in classes:
            if _normalize_string(cls.__name__) == query:
                if not return_initialize:
                    return cls
                obj = cls(**kwargs)
                assert callable(obj)
                return obj
    # query is some type
    elif isinstance(query, type):
        if query in classes or (base_cls is not None and issubclass(query, base_cls)):
            if not return_initialize:
                return query
            obj = query(**kwargs)
            assert callable(obj)
            return obj
    # query is callable
    elif callable(query):
        if query in classes:
            return query
    else:
        raise ValueError(f"{query} must be str or type or callable")
    raise ValueError(f"{query} not found")


def generator_resolver(query: type | str = "uniform", **kwargs) -> Any:
    """Look up an instance generator by name and initialize it with
    `kwargs`."""
    if isinstance(query, str):
        query = _normalize_string(query)
    # `qdisttest.core.generate` is shadowed by the re-exported function.
    module = importlib.import_module("qdisttest.core.generate")
    base_cls: type = module.BaseGenerator
    gens = [g for g in vars(module).values() if isinstance(g, type) and issubclass(g, base_cls)]
    gens = [g for g in gens if g is not base_cls]
    return _resolver(query, gens, base_cls, True, **kwargs)  # type: ignore # Since mypy cannot identify that _resolver returns BaseGenerator # noqa: E501


def tester_resolver(query: Callable | str) -> Callable:
    """Look up a tester function such as `"entropy_classical"` or
    `"l2-quantum"`."""
    if isinstance(query, str):
        query = _normalize_string(query)
    funcs = [getattr(qdisttest.testers, name) for name in qdisttest.testers.TESTERS]
    # Since the list contains functions instead of classes, return without initialize.
    return _resolver(query, funcs, return_initialize=False)
