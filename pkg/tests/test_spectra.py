import json
from collections import Counter

import pytest

from permspec.groups import (
    cyclic,
    dihedral,
    elementary_abelian,
    quaternion,
)
from permspec.sections import SectionCategory
from permspec.spectra import (
    KIND_FAMILY,
    KIND_RATIONAL,
    KIND_STRATUM_GENERIC,
    KIND_VERY_CLOSED,
    SectionPlatform,
    components,
    dimension,
    fold,
    frattini_cover_check,
    glue,
    p_rank,
    skeleton,
    skeleton_map,
    transport_point,
)


def _kind_counts(skel):
    return Counter(pt.kind for pt in skel.points)


def _labels(skel, idxs):
    return sorted(skel.points[i].label for i in idxs)


def test_cyclic_prime_v_shape():
    # eta(1) over the two very closed points M(1), M(C_p)
    for p in (2, 3, 5):
        skel = skeleton(cyclic(p), p)
        assert len(skel.points) == 3
        assert _kind_counts(skel) == {KIND_VERY_CLOSED: 2, KIND_STRATUM_GENERIC: 1}
        (g,) = [i for i, pt in enumerate(skel.points) if pt.kind != KIND_VERY_CLOSED]
        assert skel.closure(g) == {0, 1, 2}
        assert skel.height() == 1


def test_cyclic_prime_power_zigzag():
    # 2n+1 points: n+1 very closed alternating with n stratum generics, and
    # every generic specializes to exactly two very closed neighbours
    for p, n, G in ((2, 2, cyclic(4)), (2, 3, cyclic(8)),
                    (3, 2, cyclic(9)), (3, 3, cyclic(27))):
        g = glue(G, p)
        assert len(g.points) == 2 * n + 1
        assert _kind_counts(g) == {
            KIND_VERY_CLOSED: n + 1,
            KIND_STRATUM_GENERIC: n,
        }
        vc = set(g.very_closed())
        for i, pt in enumerate(g.points):
            if pt.kind == KIND_VERY_CLOSED:
                assert g.closure(i) == {i}
            else:
                assert len(g.closure(i)) == 3 and g.closure(i) - {i} <= vc
        assert g.height() == 1


def test_klein_skeleton_exact():
    skel = skeleton(elementary_abelian(2, 2), 2)
    assert len(skel.points) == 13
    assert len(skel.order) == 26
    assert len(skel.edges()) == 21
    assert _kind_counts(skel) == {
        KIND_VERY_CLOSED: 5,
        KIND_STRATUM_GENERIC: 4,
        KIND_RATIONAL: 3,
        KIND_FAMILY: 1,
    }
    by_label = {pt.label: i for i, pt in enumerate(skel.points)}
    # the full-stratum generic point of the skeleton is eta(1)
    assert skel.generic_points() == [by_label["eta(1)"]]
    # rational point closures: themselves, M(1) and M(line)
    lines = {"pt[01](1)": "M({(s^1,1)})", "pt[10](1)": "M({(1,s^1)})",
             "pt[11](1)": "M({(s^1,s^1)})"}
    for lbl, vc in lines.items():
        assert _labels(skel, skel.closure(by_label[lbl])) == sorted(
            [lbl, "M(1)", vc]
        )
    # the quadric family token closes up to M(1) and M(E)
    assert _labels(skel, skel.closure(by_label["token(1)"])) == sorted(
        ["token(1)", "M(1)", "M(full)"]
    )
    # stratum generics eta(N) close to M(N) and M(E)
    for nlbl in ("{(1,s^1)}", "{(s^1,1)}", "{(s^1,s^1)}"):
        assert _labels(skel, skel.closure(by_label[f"eta({nlbl})"])) == sorted(
            [f"eta({nlbl})", f"M({nlbl})", "M(full)"]
        )
    # very closed points admit no further specialization
    for i in skel.very_closed():
        assert skel.closure(i) == {i}


def test_klein_glue_equals_skeleton():
    E = elementary_abelian(2, 2)
    a = skeleton(E, 2).to_json()
    b = glue(E, 2).to_json()
    # a single maximal section, no relations: the glue is the plain skeleton
    # up to the component prefix on labels
    assert len(a["points"]) == len(b["points"])
    assert [pt["kind"] for pt in a["points"]] == [pt["kind"] for pt in b["points"]]
    assert a["edges"] == b["edges"]


def test_d8_glue():
    g = glue(dihedral(8), 2)
    assert len(g.points) == 25
    assert _kind_counts(g) == {
        KIND_STRATUM_GENERIC: 10,
        KIND_VERY_CLOSED: 8,
        KIND_RATIONAL: 4,
        KIND_FAMILY: 3,
    }
    assert [(s.H.order, s.K.order) for s, _ in g.sections] == [
        (4, 1), (4, 1), (8, 2),
    ]
    merged = {
        c: sorted(prov) for c, prov in g.provenance.items() if len(prov) > 1
    }
    # the identifications of the three platforms (two Klein subgroups K, K'
    # and the top section D8/Z):
    assert merged == {
        # shared very closed point of the trivial subgroup
        0: [(0, "M(1)"), (1, "M(1)")],
        # conjugation folds two rational points of each Klein component ...
        2: [(0, "pt[01](1)"), (0, "pt[11](1)")],
        11: [(1, "pt[01](1)"), (1, "pt[11](1)")],
        # ... and identifies the center line across the two components
        3: [(0, "pt[10](1)"), (1, "pt[10](1)")],
        # M(Z) is one point seen from all three platforms
        5: [(0, "M({r^2N})"), (1, "M({r^2N})"), (2, "M(1)")],
        # eta(Z) of each Klein component lands on a rational point upstairs
        6: [(0, "eta({r^2N})"), (2, "pt[01](1)")],
        13: [(1, "eta({r^2N})"), (2, "pt[11](1)")],
        # reflection lines fuse pairwise inside each component
        7: [(0, "M({r^2sN})"), (0, "M({sN})")],
        8: [(0, "eta({r^2sN})"), (0, "eta({sN})")],
        14: [(1, "M({r^1sN})"), (1, "M({r^3sN})")],
        15: [(1, "eta({r^1sN})"), (1, "eta({r^3sN})")],
        # the top of each Klein component is a very closed point upstairs
        9: [(0, "M(full)"), (2, "M({sN})")],
        16: [(1, "M(full)"), (2, "M({r^1sN})")],
    }
    assert len(g.very_closed()) == 8
    assert g.height() == 2


def test_d8_summary_numbers():
    D8 = dihedral(8)
    assert len(components(D8, 2)) == 3
    assert dimension(D8, 2) == 2
    assert p_rank(D8, 2) == 2


def test_q8_glue():
    Q8 = quaternion()
    g = glue(Q8, 2)
    assert len(g.points) == 15
    # only M(Z) ~ M(1)-upstairs is identified across the two platforms
    merged = [sorted(prov) for prov in g.provenance.values() if len(prov) > 1]
    assert merged == [[(0, "M(full)"), (1, "M(1)")]]
    assert len(components(Q8, 2)) == 2
    assert dimension(Q8, 2) == 2
    assert p_rank(Q8, 2) == 1


def test_raw_reduction_agrees():
    for G, p in ((cyclic(8), 2), (quaternion(), 2)):
        a = glue(G, p, reduction="raw").to_json()
        b = glue(G, p, reduction="full").to_json()
        assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_fold_klein_swap():
    E = elementary_abelian(2, 2)
    skel = skeleton(E, 2)
    folded = fold(skel, [[0, 1], [1, 0]])
    # swapping the basis identifies M/eta of the two swapped lines and the
    # two swapped rational points; the diagonal line, the token and the
    # trivial/full strata stay put
    assert len(folded.points) == 10
    merged = sorted(
        tuple(sorted(lbl for _, lbl in prov))
        for prov in folded.provenance.values()
        if len(prov) > 1
    )
    assert merged == [
        ("M({(1,s^1)})", "M({(s^1,1)})"),
        ("eta({(1,s^1)})", "eta({(s^1,1)})"),
        ("pt[01](1)", "pt[10](1)"),
    ]


def test_fold_identity_is_noop():
    E = elementary_abelian(2, 2)
    skel = skeleton(E, 2)
    folded = fold(skel, [[1, 0], [0, 1]])
    assert len(folded.points) == len(skel.points)


def test_fold_rejects_singular_matrix():
    E = elementary_abelian(2, 2)
    skel = skeleton(E, 2)
    with pytest.raises(AssertionError):
        fold(skel, [[1, 1], [1, 1]])


def test_frattini_cover_rank2():
    assert frattini_cover_check(elementary_abelian(2, 2), 2)
    assert frattini_cover_check(elementary_abelian(3, 2), 3)


def test_rank3_strata_skeletons():
    # every elementary abelian skeleton has a unique generic point and its
    # maximal points are exactly the very closed ones
    for p, expected in ((2, 31), (3, 55)):
        E = elementary_abelian(p, 3)
        skel = skeleton(E, p, level="strata")
        assert len(skel.points) == expected
        assert len(skel.generic_points()) == 1
        for i in range(len(skel.points)):
            closed = skel.closure(i) == {i}
            assert closed == (skel.points[i].kind == KIND_VERY_CLOSED)


def test_skeleton_map_functoriality():
    # composing transports along a factorized morphism agrees with the
    # direct transport, for every point over every D8 morphism between
    # maximal sections and their apexes
    D8, p = dihedral(8), 2
    cat = SectionCategory(D8, p)
    checked = 0
    for rel in cat.maximal_relations():
        for leg in (rel.f1, rel.f2):
            f = skeleton_map(leg, p)
            a, b, c = cat.factorize(leg)
            fc = skeleton_map(c, p)
            fb = skeleton_map(b, p)
            fa = skeleton_map(a, p)
            for pt in f.source_platform.skel.points:
                direct = f(pt)
                stepped = fa(fb(fc(pt)))
                assert direct.stratum.elements == stepped.stratum.elements
                assert direct.ideal == stepped.ideal
                checked += 1
    assert checked > 0


def test_transport_preserves_very_closed():
    D8, p = dihedral(8), 2
    cat = SectionCategory(D8, p)
    for rel in cat.maximal_relations():
        ap = SectionPlatform(rel.apex, p)
        for leg in (rel.f1, rel.f2):
            fp = SectionPlatform(leg.target, p)
            for pt in ap.skel.points:
                img = transport_point(leg, ap, fp, pt)
                if pt.kind == KIND_VERY_CLOSED:
                    assert img.kind == KIND_VERY_CLOSED


def test_json_and_dot_output():
    skel = skeleton(elementary_abelian(2, 2), 2)
    data = skel.to_json()
    assert len(data["points"]) == 13
    assert all({"id", "kind", "label"} <= set(pt) for pt in data["points"])
    assert sorted(tuple(e) for e in data["edges"]) == skel.edges()
    dot = skel.to_dot()
    assert dot.startswith("digraph") and dot.count("->") == len(skel.edges())


def test_glued_json_provenance():
    g = glue(dihedral(8), 2)
    data = g.to_json()
    assert len(data["points"]) == 25
    json.dumps(data)  # serializable
