"""The eight smell kinds this tool screens for, plus per-kind metadata."""

from __future__ import annotations

from enum import Enum


class Smell(str, Enum):
    DATA_CLASS = "data_class"
    FEATURE_ENVY = "feature_envy"
    GOD_CLASS = "god_class"
    LONG_PARAMETER_LIST = "long_parameter_list"
    MIDDLE_MAN = "middle_man"
    PRIMITIVE_OBSESSION = "primitive_obsession"
    REFUSED_BEQUEST = "refused_bequest"
    SPECULATIVE_GENERALITY = "speculative_generality"


DISPLAY_NAMES: dict[Smell, str] = {
    Smell.DATA_CLASS: "Data Class",
    Smell.FEATURE_ENVY: "Feature Envy",
    Smell.GOD_CLASS: "God Class",
    Smell.LONG_PARAMETER_LIST: "Long Parameter List",
    Smell.MIDDLE_MAN: "Middle Man",
    Smell.PRIMITIVE_OBSESSION: "Primitive Obsession",
    Smell.REFUSED_BEQUEST: "Refused Bequest",
    Smell.SPECULATIVE_GENERALITY: "Speculative Generality",
}

ITEM_PREFIXES: dict[Smell, str] = {
    Smell.DATA_CLASS: "DC",
    Smell.FEATURE_ENVY: "FE",
    Smell.GOD_CLASS: "GC",
    Smell.LONG_PARAMETER_LIST: "LPL",
    Smell.MIDDLE_MAN: "MM",
    Smell.PRIMITIVE_OBSESSION: "PO",
    Smell.REFUSED_BEQUEST: "RB",
    Smell.SPECULATIVE_GENERALITY: "SG",
}

# Entity kinds a candidate of each smell may point at.  Most smells judge a
# whole type; parameter- and call-shaped smells judge one method.  Primitive
# Obsession and Speculative Generality have both a type rule and a method rule.
TYPE_SMELLS = frozenset(
    {
        Smell.DATA_CLASS,
        Smell.GOD_CLASS,
        Smell.MIDDLE_MAN,
        Smell.PRIMITIVE_OBSESSION,
        Smell.REFUSED_BEQUEST,
        Smell.SPECULATIVE_GENERALITY,
    }
)
METHOD_SMELLS = frozenset(
    {
        Smell.FEATURE_ENVY,
        Smell.LONG_PARAMETER_LIST,
        Smell.PRIMITIVE_OBSESSION,
        Smell.SPECULATIVE_GENERALITY,
    }
)


class UnknownSmellKind(ValueError):
    """Raised when a string does not name one of the eight smell kinds."""


def parse_smell(name: str) -> Smell:
    try:
        return Smell(name)
    except ValueError:
        raise UnknownSmellKind(f"unknown smell kind: {name!r}") from None
