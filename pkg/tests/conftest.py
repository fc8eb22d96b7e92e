import numpy as np
import pytest

from magicsquare_cipher import SecretKey, encrypt_image, parse_key

import images

REF_KEY_HEX = "C6DA750B4C1F78D329EA25E6B15CF9E47D21"


@pytest.fixture
def ref_key():
    return parse_key(REF_KEY_HEX)


@pytest.fixture
def rng():
    return np.random.default_rng(20121016)


@pytest.fixture(scope="session")
def corpus():
    return images.corpus(512)


@pytest.fixture(scope="session")
def corpus_key():
    return parse_key(REF_KEY_HEX)


@pytest.fixture(scope="session")
def encrypted_corpus(corpus, corpus_key):
    return {name: encrypt_image(img, corpus_key) for name, img in corpus.items()}


def random_key(rng) -> SecretKey:
    return SecretKey(rng.integers(0, 256, 18, dtype=np.uint8).tobytes())


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS):
        terminalreporter.write_line(line)
