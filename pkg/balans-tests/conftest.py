"""
Shared pytest fixtures for balans testing.

This module provides reusable fixtures for:
- Importing the modules at the repository root
- Running the CLI in a subprocess
- Decoding and hashing PPM grid images
- Seeded randomness for property tests
"""

import hashlib
import io
import json
import os
import random
import subprocess
import sys
from pathlib import Path

import pytest
from PIL import Image

# The modules live one directory up, next to cli.py
REPO_ROOT = Path(__file__).resolve().parent.parent
if str(REPO_ROOT) not in sys.path:
    sys.path.insert(0, str(REPO_ROOT))

CLI_PATH = REPO_ROOT / "cli.py"
CONFIG_PATH = REPO_ROOT / "balans_config.json"


@pytest.fixture(scope="session")
def repo_root():
    """Repository root holding cli.py and balans_config.json."""
    return REPO_ROOT


@pytest.fixture(scope="session")
def cli_runner():
    """
    Runs cli.py in a subprocess.

    Usage:
        def test_something(cli_runner):
            result = cli_runner.run('find', '--a', '1', '--b', '1', '--nmax', '1500')
            assert result.code == 0
            data = result.json()
    """
    class CLIResult:
        def __init__(self, completed):
            self.code = completed.returncode
            self.stdout = completed.stdout
            self.stderr = completed.stderr

        def json(self):
            return json.loads(self.stdout)

    class CLIRunner:
        def __init__(self, cli_path):
            self.cli_path = cli_path

        def run(self, *args, jobs_env=None, timeout=600):
            """Run `cli.py args...`; BALANS_JOBS is cleared unless jobs_env is given."""
            env = dict(os.environ)
            env.pop("BALANS_JOBS", None)
            if jobs_env is not None:
                env["BALANS_JOBS"] = str(jobs_env)
            completed = subprocess.run(
                [sys.executable, str(self.cli_path), *map(str, args)],
                capture_output=True, text=True, env=env, timeout=timeout, cwd=str(REPO_ROOT))
            return CLIResult(completed)

    return CLIRunner(CLI_PATH)


@pytest.fixture
def ppm_helper():
    """
    Helper for decoding and comparing plain PPM output.

    Usage:
        def test_grid(ppm_helper):
            image = ppm_helper.decode(ppm_bytes)
            assert image.getpixel((0, 0)) == (192, 192, 192)
    """
    class PPMHelper:
        def decode(self, data: bytes) -> Image.Image:
            """Decode P3 bytes into an RGB image."""
            image = Image.open(io.BytesIO(data))
            image.load()
            return image.convert("RGB")

        def hash_bytes(self, data: bytes) -> str:
            """md5 of the raw output bytes."""
            return hashlib.md5(data).hexdigest()

        def header(self, data: bytes):
            """(magic, width, height, maxval) from the first three lines."""
            lines = data.decode("ascii").splitlines()
            width, height = (int(v) for v in lines[1].split())
            return lines[0], width, height, int(lines[2])

    return PPMHelper()


@pytest.fixture
def rng():
    """Seeded random.Random so property tests are reproducible."""
    return random.Random(20240611)
