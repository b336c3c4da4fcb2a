#pragma once

#include "dproc/config_graph.hpp"
#include "dproc/switching.hpp"

namespace dproc {

// A switching pair (G+, G-) with its anchor.
struct AnchoredPair {
    DegreeSequence ds;
    ConfigGraph plus;
    ConfigGraph minus;
    SwitchAnchor anchor;
};

// The 8-vertex counterexample instance: degrees A=2, B=2, V1=2, V2=4, V3=2,
// V4=2, X=3, Y=3; switching ab, xy into ax, by removes exactly one small
// edge (k=2), yet G- is the more likely graph under both processes.
inline AnchoredPair counterexample_instance() {
    DegreeSequence ds(std::vector<int>{2, 2, 2, 4, 2, 2, 3, 3});
    PointMap pm(ds);
    auto pid = [&](int v, int c) { return pm.pid(Point{v, c}); };
    // vertices: 1=A 2=B 3=V1 4=V2 5=V3 6=V4 7=X 8=Y
    std::vector<std::pair<int, int>> plus_pairs = {
        {pid(1, 1), pid(2, 1)},  // a-b
        {pid(1, 2), pid(3, 1)},  // A-V1
        {pid(2, 2), pid(4, 1)},  // B-V2
        {pid(5, 1), pid(4, 2)},  // V3-V2
        {pid(5, 2), pid(7, 2)},  // V3-X
        {pid(7, 1), pid(3, 2)},  // X-V1
        {pid(7, 3), pid(8, 1)},  // x-y
        {pid(8, 3), pid(4, 3)},  // Y-V2
        {pid(8, 2), pid(6, 2)},  // Y-V4
        {pid(4, 4), pid(6, 1)},  // V2-V4
    };
    SwitchAnchor anchor{pid(1, 1), pid(2, 1), pid(7, 3), pid(8, 1), 2};
    ConfigGraph plus(ds, plus_pairs);
    ConfigGraph minus = switch_graph(plus, anchor);
    return AnchoredPair{ds, plus, minus, anchor};
}

// The introductory k=1 switching example: a, b of degree one, x, y of degree
// three, with x joined to two pendant vertices and y sitting on a triangle
// with two degree-two vertices.
inline AnchoredPair pendant_switch_instance() {
    DegreeSequence ds(std::vector<int>{1, 1, 3, 3, 1, 1, 2, 2});
    PointMap pm(ds);
    auto pid = [&](int v, int c) { return pm.pid(Point{v, c}); };
    // vertices: 1=A 2=B 3=X 4=Y 5,6 pendants 7,8 degree-two
    std::vector<std::pair<int, int>> plus_pairs = {
        {pid(1, 1), pid(2, 1)},  // a-b
        {pid(3, 3), pid(4, 1)},  // x-y
        {pid(3, 1), pid(5, 1)},  // X-pendant
        {pid(3, 2), pid(6, 1)},  // X-pendant
        {pid(4, 2), pid(7, 1)},  // Y-e
        {pid(7, 2), pid(8, 1)},  // e-f
        {pid(4, 3), pid(8, 2)},  // Y-f
    };
    SwitchAnchor anchor{pid(1, 1), pid(2, 1), pid(3, 3), pid(4, 1), 1};
    ConfigGraph plus(ds, plus_pairs);
    ConfigGraph minus = switch_graph(plus, anchor);
    return AnchoredPair{ds, plus, minus, anchor};
}

}  // namespace dproc
