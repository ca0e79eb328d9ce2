from pathlib import Path

import numpy as np
from PIL import Image

OUT = Path(__file__).resolve().parent / "output"


def save(name, rgb):
    OUT.mkdir(exist_ok=True)
    path = OUT / name
    Image.fromarray(np.asarray(rgb, np.uint8)).save(path)
    print(f"  saved {path.relative_to(OUT.parent.parent)}")


def strip(*images):
    """Concatenate equally tall images side by side."""
    return np.concatenate(images, axis=1)
