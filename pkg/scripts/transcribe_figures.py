"""Regenerate src/walklab/data/fixtures.json from hand transcriptions of the drawings.

Each entry lists the drawn node names in index order; edges are written with
those names so the transcription can be audited against the figures.
Run:  python scripts/transcribe_figures.py
"""

import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "walklab" / "data" / "fixtures.json"


def entry(labels, edges, marks, note):
    idx = {name: i for i, name in enumerate(labels)}
    return {
        "n": len(labels),
        "edges": sorted(sorted((idx[a], idx[b])) for a, b in edges),
        "marks": {k: idx[v] for k, v in marks.items()},
        "labels": labels,
        "note": note,
    }


def chain(*names):
    return list(zip(names, names[1:]))


HP_LABELS = [f"a{i}" for i in range(1, 12)]
HP_EDGES = (chain("a1", "a2", "a3", "a4", "a5") + [("a5", "a6"), ("a5", "a7")]
            + chain("a7", "a8", "a9") + [("a9", "a10"), ("a9", "a11")])


def kv33():
    """Both graphs of the s = t = 3 drawing, expanded macro by macro."""
    def block(i):
        # \bloock: v - vnew - vv - a ; a - b1 - bb1 - top ; a - b2 - bb2 - top
        p = f"B{i}."
        labels = [p + x for x in ("v", "vnew", "vv", "a", "b1", "b2", "bb1", "bb2", "top")]
        edges = (chain(p + "v", p + "vnew", p + "vv", p + "a")
                 + [(p + "a", p + "b1"), (p + "a", p + "b2"), (p + "b1", p + "bb1"),
                    (p + "b2", p + "bb2"), (p + "bb1", p + "top"), (p + "bb2", p + "top")])
        return labels, edges

    g_labels, g_edges = [], []
    for i in (1, 2, 3):
        lab, ed = block(i)
        g_labels += lab
        g_edges += ed
    g_labels += ["v4", "vnew45", "v5", "a4", "b4", "bb4"]
    g_edges += chain("v4", "vnew45", "v5", "a4") + [("a4", "b4"), ("a4", "bb4"), ("b4", "bb4")]
    g_edges += [("B2.v", "B1.top"), ("B3.v", "B2.top"), ("v4", "B3.top")]
    G = entry(g_labels, g_edges,
              {"v": "B1.v", "a": "B3.bb1", "b": "B3.bb2", "c": "B3.top", "g": "v4"},
              "G_{3,3}: three T_{6,3} blocks, then path + triangle")

    h_labels, h_edges = [], []
    for i in (1, 2):
        lab, ed = block(i)
        h_labels += lab
        h_edges += ed
    h_labels += ["v3", "vnew3", "vv3", "aaa", "bx", "by", "bbx", "bby",
                 "aaa1", "aaa2", "vvv1", "vvvnew", "vvv2", "b4", "bb4"]
    h_edges += ([("B2.v", "B1.top"), ("v3", "B2.top")]
                + chain("v3", "vnew3", "vv3", "aaa")
                + [("aaa", "bx"), ("aaa", "by"), ("bx", "bbx"), ("by", "bby"),
                   ("aaa1", "bbx"), ("aaa2", "bby")]
                + chain("aaa1", "vvv1", "vvvnew", "vvv2", "aaa2")
                + [("b4", "aaa1"), ("bb4", "aaa2"), ("bb4", "b4")])
    H = entry(h_labels, h_edges,
              {"u": "B1.v", "a'": "bbx", "b'": "bby", "c'": "aaa1", "c''": "aaa2",
               "g'": "vvv1", "b''": "b4", "y'": "vvvnew"},
              "H_{3,3}: two T_{6,3} blocks, then the modified head block")
    return G, H


def main():
    fx = {}
    fx["hp"] = entry(HP_LABELS, HP_EDGES, {"x": "a4", "y": "a8"},
                     "Harary-Palmer tree with pseudosimilar x, y")
    fx["hp_unicyclic"] = entry(
        [f"x{i}" for i in range(1, 10)] + ["y3", "y6", "y9"],
        [("x1", "x9")] + [(f"x{i}", f"x{i + 1}") for i in (1, 2, 3, 4, 5, 8)]
        + [("x6", "x7"), ("x7", "x8"), ("x3", "y3"), ("x6", "y6"), ("x9", "y9")],
        {"v": "x7", "x": "x4", "y": "x1"},
        "unicyclic U: 9-cycle with pendants every third vertex; alpha = rotation by -3")
    fx["amb12_T"] = entry(HP_LABELS + ["a12"], HP_EDGES + [("a4", "a12")], {"x": "a4"},
                          "T = L_x . P_2")
    fx["amb12_S"] = entry(HP_LABELS + ["a12"], HP_EDGES + [("a8", "a12")], {"y": "a8"},
                          "S = L_y . P_2")
    fx["schwenk"] = entry([f"a{i}" for i in range(1, 10)],
                          chain(*[f"a{i}" for i in range(1, 9)]) + [("a3", "a9")],
                          {"x": "a2", "y": "a5"}, "Schwenk's 9-vertex limb")
    sp_t = ["a", "b1", "b2", "b3", "c1", "c2", "c3", "d1", "d2", "d3", "e1", "e2", "e3"]
    fx["sporadic13_T"] = entry(
        sp_t, sum((chain("a", f"b{i}", f"c{i}", f"d{i}", f"e{i}") for i in (1, 2, 3)), []),
        {"x": "b3"}, "spider with three legs of length 4")
    sp_s = ["a", "b1", "b2", "c1", "c2", "d1", "d2", "d3", "d4", "e1", "e2", "e3", "e4"]
    fx["sporadic13_S"] = entry(
        sp_s, chain("a", "b1", "c1", "d1", "e1") + chain("a", "b2", "c2", "d4", "e4")
        + chain("c1", "d2", "e2") + chain("c2", "d3", "e3"),
        {"y": "b1"}, "sporadic partner tree")
    wo = ["a", "b1", "b2", "c1", "c2", "d1", "d2", "e1", "e2",
          "f1", "f2", "f3", "f4", "g1", "g2", "g3", "g4"]
    fx["walkonly14"] = entry(
        wo, chain("a", "b1", "c1", "d1", "e1", "f1", "g1")
        + chain("a", "b2", "c2", "d2", "e2", "f4", "g4")
        + chain("e1", "f2", "g2") + chain("e2", "f3", "g3"),
        {"x": "b2", "y": "f4"},
        "walk-equivalent but not closed-walk-equivalent pair in one tree (17 vertices as drawn)")
    fx["diststrong_T11"] = entry(
        ["a1", "a2", "a3", "a4", "a5", "a6", "b", "c1", "c2", "d1", "d2"],
        chain("d1", "c1", "b", "c2", "d2") + chain("b", "a1", "a2", "a3", "a4", "a5", "a6"),
        {"x": "a1"}, "11-vertex tree, strongly walk-equivalent to y in diststrong_S10")
    fx["diststrong_S10"] = entry(
        ["a", "b1", "b2", "c0", "c1", "c2", "d1", "d21", "d22", "e1"],
        chain("e1", "d1", "c1", "b1", "a", "b2", "c2", "d22") + [("b1", "c0"), ("c2", "d21")],
        {"y": "a"}, "10-vertex partner")
    fx["p7"] = entry([f"a{i}" for i in range(1, 8)], chain(*[f"a{i}" for i in range(1, 8)]),
                     {"x": "a4"}, "path P_7, x the centre")
    fx["y5"] = entry(["a1", "a2", "a3", "a4", "b"], chain("a1", "a2", "a3", "a4") + [("a3", "b")],
                     {"y": "a2"}, "Y_5")
    fx["e6"] = entry(
        [f"p{i}" for i in range(1, 8)] + ["a1", "a2", "a3", "a4", "b"],
        chain(*[f"p{i}" for i in range(1, 8)]) + chain("a1", "a2", "a3", "a4") + [("a3", "b")]
        + [("p4", "a2")],
        {"x": "p4", "y": "a2"}, "P_7 and Y_5 joined by the edge x-y")
    fx["dist_T8"] = entry(
        ["c", "a", "b1", "b2", "c1", "c2", "d1", "d2"],
        chain("d1", "c1", "b1", "a", "b2", "c2", "d2") + [("a", "c")],
        {"x": "b1"}, "8-vertex tree with main polynomial z^4 - z^3 - 4z^2 + 4z")
    fx["dist_S11"] = entry(
        ["a", "b1", "b2", "c1", "c2", "d1", "d2", "e11", "e12", "e21", "e22"],
        chain("e11", "d1", "c1", "b1", "a", "b2", "c2", "d2", "e22")
        + [("d1", "e12"), ("d2", "e21")],
        {"y": "c2"}, "11-vertex tree with main polynomial z^5 - 6z^3 + 8z")
    g, h = kv33()
    fx["kv_G_3_3"] = g
    fx["kv_H_3_3"] = h
    lines = [f"  {json.dumps(k)}: {json.dumps(fx[k], sort_keys=True)}" for k in sorted(fx)]
    OUT.write_text('{"version": 1, "fixtures": {\n' + ",\n".join(lines) + "\n}}\n")
    print(f"wrote {len(fx)} fixtures to {OUT}")


if __name__ == "__main__":
    main()
