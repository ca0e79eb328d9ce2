import numpy as np
import pytest

from emotransfer.colorspace import srgb_to_lab
from emotransfer.scheme import demo_library

BLOCK_RGB = np.array([[200, 40, 40], [40, 160, 70], [40, 70, 210]])
BLOCK_FRACTIONS = (0.6, 0.3, 0.1)


def block_image(colors, fractions=BLOCK_FRACTIONS, height=100, width=50):
    """Horizontal bands of constant Lab colors with the given area fractions."""
    rows = np.round(np.cumsum((0,) + tuple(fractions)) * height).astype(int)
    img = np.empty((height, width, 3))
    for k, color in enumerate(colors):
        img[rows[k]:rows[k + 1]] = color
    return img


@pytest.fixture
def block_colors():
    return srgb_to_lab(BLOCK_RGB)


@pytest.fixture
def three_blocks(block_colors):
    return block_image(block_colors)


@pytest.fixture(scope="session")
def demo_lib():
    return demo_library()


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {key}: {detail}")
