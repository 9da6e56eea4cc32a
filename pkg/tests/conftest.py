import random

import pytest

import treenodal as tn
from treenodal.verify import eigenvector_decomposition

# the seeded verification corpus: 1000 random trees, N in [4, 12],
# weights uniform(0.5, 2), potentials uniform(-1, 1)
CORPUS_SEED = 7
CORPUS_COUNT = 1000
CORPUS_N_MIN = 4
CORPUS_N_MAX = 12


@pytest.fixture
def p2():
    return tn.generate("path", 2)


@pytest.fixture
def p3():
    return tn.generate("path", 3)


@pytest.fixture
def star5():
    """Unit-weight 4-edge star: center 0, leaves 1..4, rooted at leaf 1."""
    return tn.generate("star", 5)


def draw_corpus(count=CORPUS_COUNT, seed=CORPUS_SEED):
    master = random.Random(seed)
    out = []
    for _ in range(count):
        n = master.randrange(CORPUS_N_MIN, CORPUS_N_MAX + 1)
        tree_seed = master.randrange(2**63)
        pot_seed = master.randrange(2**63)
        tree = tn.generate("random_pruefer", n, weight_law="uniform:0.5:2", seed=tree_seed)
        r = tn.random_potential(n, law="uniform:-1:1", seed=pot_seed)
        out.append((tree, r))
    return out


@pytest.fixture(scope="session")
def corpus():
    """(tree, potential) pairs of the full seeded corpus."""
    return draw_corpus()


@pytest.fixture(scope="session")
def corpus_spectra(corpus):
    """(tree, operator, spectrum) for every corpus instance."""
    out = []
    for tree, r in corpus:
        op = tn.assemble(tree, r)
        out.append((tree, op, tn.decompose(op)))
    return out


@pytest.fixture(scope="session")
def corpus_decompositions(corpus_spectra):
    """Adds the nodal decomposition of every eigenvector."""
    out = []
    for tree, op, spec in corpus_spectra:
        decs = [eigenvector_decomposition(tree, spec, k) for k in range(1, spec.n + 1)]
        out.append((tree, op, spec, decs))
    return out
