#pragma once

#include "gel/graph.hpp"

#include <memory>
#include <string>

namespace fixtures {

inline gel::GraphPtr load(const std::string &name) {
    return std::make_shared<const gel::Graph>(
        gel::load_graph(std::string(GEL_FIXTURES) + "/" + name + ".graph"));
}

inline gel::GraphPtr fib() { return load("fib"); }
inline gel::GraphPtr ex62() { return load("ex62"); }
inline gel::GraphPtr o2() { return load("o2"); }

inline gel::GraphPtr cuntz(int n) {
    std::string text = "vertex x\n";
    for (int i = 0; i < n; ++i)
        text += "edge " + std::string(1, static_cast<char>('a' + i)) + " x x\n";
    return std::make_shared<const gel::Graph>(gel::parse_graph(text));
}

} // namespace fixtures
