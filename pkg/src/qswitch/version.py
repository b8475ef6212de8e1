"""qswitch version information."""

from pathlib import Path

THIS_DIR = Path(__file__).parent
__version__ = (THIS_DIR / "version.txt").read_text().strip()
__source__ = "https://github.com/pegasus-isi/qswitch.git"
__issues__ = "https://github.com/pegasus-isi/qswitch/issues"
__changelog__ = "https://github.com/pegasus-isi/qswitch/blob/main/CHANGELOG.md"
__documentation__ = "https://github.com/pegasus-isi/qswitch/tree/main/docs"
