"""Shared test helpers: load the shipped logic and vector files."""

from __future__ import annotations

import pathlib

import ctxlab
from ctxlab.logic import Logic, parse_logic

DATA = pathlib.Path(ctxlab.__file__).parent / "data"


def load_logic(name: str) -> Logic:
    return parse_logic((DATA / f"{name}.logic").read_text())


def read_vectors(name: str) -> str:
    return (DATA / f"{name}.vec").read_text()
