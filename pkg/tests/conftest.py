import itertools

from hypothesis import strategies as st

from meshpat.mesh import MeshPattern
from meshpat.perm import Permutation


def oracle_count(pi, tau, boxes) -> int:
    """
    Occurrence count straight from the definition: the subsequence must be
    order-isomorphic to tau, and for every shaded box the open rectangle it
    spans in pi's diagram must be empty.  Deliberately slow and independent
    of the library's box-assignment loop and of the sweep tables.
    """
    pi, tau = list(pi), list(tau)
    n, k = len(pi), len(tau)
    total = 0
    for idx in itertools.combinations(range(n), k):
        sub = [pi[i] for i in idx]
        if any((sub[a] < sub[b]) != (tau[a] < tau[b]) for a in range(k) for b in range(k)):
            continue
        xs = [-1] + list(idx) + [n]
        vs = [0] + sorted(sub) + [n + 1]
        clear = True
        for a, b in boxes:
            for j in range(xs[a] + 1, xs[a + 1]):
                if vs[b] < pi[j] < vs[b + 1]:
                    clear = False
                    break
            if not clear:
                break
        total += clear
    return total


def oracle_joint(q1, q2, n) -> dict:
    out: dict = {}
    for vals in itertools.permutations(range(1, n + 1)):
        key = (oracle_count(vals, q1.tau.values, q1.shading), oracle_count(vals, q2.tau.values, q2.shading))
        out[key] = out.get(key, 0) + 1
    return dict(sorted(out.items()))


@st.composite
def permutations(draw, min_n=0, max_n=7):
    n = draw(st.integers(min_n, max_n))
    return Permutation(tuple(draw(st.permutations(range(1, n + 1)))))


@st.composite
def mesh_patterns(draw, min_k=1, max_k=3):
    k = draw(st.integers(min_k, max_k))
    tau = draw(st.permutations(range(1, k + 1)))
    boxes = draw(st.sets(st.tuples(st.integers(0, k), st.integers(0, k))))
    return MeshPattern.of(tuple(tau), boxes)


@st.composite
def length2_patterns(draw):
    tau = draw(st.sampled_from(["12", "21"]))
    boxes = draw(st.sets(st.tuples(st.integers(0, 2), st.integers(0, 2))))
    return MeshPattern.of(tau, boxes)


# filled by test_acceptance.py and echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
