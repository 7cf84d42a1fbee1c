"""Bundled example inputs: the medication-assistant goal model and its
track-medication fragment, the smart-home context schema, two stakeholder
preference catalogues, and a handful of situations."""

from importlib import resources


def read(name: str) -> str:
    return (resources.files(__package__) / name).read_text(encoding="utf-8")


def names() -> list[str]:
    return sorted(
        entry.name for entry in resources.files(__package__).iterdir()
        if entry.name.rsplit(".", 1)[-1] in ("gm", "ctx", "prefs", "sit"))
