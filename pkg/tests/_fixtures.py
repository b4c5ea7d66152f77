"""Shared seeded fixture recipes for the module and acceptance tests."""

from paradol.cli import generate_fixture
from paradol.modules import PsiModule
from paradol.vnearby import GraphModule

TYPE_TO_GAP = {"A": "xy", "Ax": "x", "Ay": "y"}


def qis_payloads(count: int = 20):
    """Seeded direct-sum fixtures of ranks 1..3 with compatible phi."""
    out = []
    for seed in range(count):
        sc = generate_fixture("qis_check", seed, 1 + seed % 3)
        out.append(sc["payload"])
    return out


def psi_from_payload(payload) -> PsiModule:
    return PsiModule(payload["types"], payload["phi"])


def graph_from_payload(payload) -> GraphModule:
    """Chart model with R_x = phi and R_y = 0, so phi_log matches."""
    gaps = [TYPE_TO_GAP[t] for t in payload["types"]]
    phi = [[int(x) for x in row] for row in payload["phi"]]
    return GraphModule(gaps, phi, None)
