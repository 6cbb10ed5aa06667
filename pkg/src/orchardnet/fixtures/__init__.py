"""Hand-transcribed networks from the figures, as eNewick files."""

from importlib import resources

from ..enewick import parse_enewick

NAMES = ("fig1_n1", "fig1_n2", "fig2_trinet", "fig3_n1", "fig3_n2", "fig4_a", "fig4_b")


def text(name: str) -> str:
    return resources.files(__name__).joinpath(f"{name}.enwk").read_text(encoding="utf-8")


def load(name: str):
    return parse_enewick(text(name))
