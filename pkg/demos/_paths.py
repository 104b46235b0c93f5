"""Where the demo scripts drop their CSV and SVG files."""

import os

OUT = os.environ.get("OPTOMECH_DEMO_OUT", os.path.join(os.path.dirname(__file__), "out"))
os.makedirs(OUT, exist_ok=True)


def out(name):
    return os.path.join(OUT, name)
