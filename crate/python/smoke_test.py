"""Smoke test for the domdelay extension module."""

import itertools

import domdelay


def p6():
    return domdelay.Graph(6, [(i, i + 1) for i in range(5)])


def main():
    g = p6()
    assert (g.n, g.m) == (6, 5)

    c = domdelay.classify(g)
    assert c.ir == [0, 2, 3, 5] and c.rn == [1, 4], c

    for mode in ("p7", "p8"):
        sols = list(domdelay.enumerate_dom(g, mode=mode, verify_class=True))
        assert sorted(sols) == sorted(domdelay.brute_dom(g)), mode
        assert len(sols) == 7
        assert all(domdelay.is_minimal_dominating(g, d) for d in sols)

    rn = sorted(domdelay.enumerate_rn(g, mode="p8"))
    assert rn == [[], [1], [1, 4], [4]], rn
    assert list(domdelay.enumerate_dir(g, [1])) == [[2, 5], [3, 5]]

    try:
        domdelay.verify_class(domdelay.Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)]))
    except domdelay.NotInClassError as e:
        assert "cycle" in str(e)
    else:
        raise AssertionError("C4 accepted")

    try:
        list(domdelay.enumerate_dom(domdelay.Graph(2), mode="p7"))
    except domdelay.DisconnectedError:
        pass
    else:
        raise AssertionError("disconnected graph accepted")

    h = domdelay.gen_pk_free_chordal(9, 8, seed=3)
    assert sorted(domdelay.enumerate_dom(h)) == sorted(domdelay.brute_dom(h))
    assert domdelay.Graph.parse(h.to_dimacs()).edges() == h.edges()

    big = domdelay.gen_pk_free_chordal(300, 7, seed=1)
    first = list(itertools.islice(domdelay.enumerate_dom(big, mode="p7"), 50))
    assert len(first) == 50 and len({tuple(d) for d in first}) == 50

    pre, samples = domdelay.bench(big, mode="p7", limit=20)
    assert pre > 0 and len(samples) == 20

    graph, rn, roles = domdelay.build_reduction(3, [[1, 2, 3], [-1, 2, -3], [1, -2, 3]])
    assert graph.n == 39 and len(roles.splitlines()) == 39
    assert domdelay.drn_member(graph, rn) is not None

    assert len(domdelay.exhaustive_corpus(5)) == 1 + 1 + 2 + 6 + 21
    print("smoke test passed")


if __name__ == "__main__":
    main()
