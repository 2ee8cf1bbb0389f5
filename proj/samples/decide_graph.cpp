// Reads a graph file and prints its B-factorizability verdict.
//
//   decide_graph samples/cube.graph [seconds]

#include <fstream>
#include <iostream>
#include <sstream>

#include "hapmono.hpp"

int main(int argc, char** argv) {
    using namespace hapmono;
    if (argc < 2) {
        std::cerr << "usage: decide_graph <graph file> [seconds]\n";
        return 64;
    }
    std::ifstream in(argv[1]);
    std::stringstream text;
    text << in.rdbuf();
    const RegularGraph g = parse_graph(text.str());
    const double seconds = argc > 2 ? std::stod(argv[2]) : 60;

    BFactorVerdict v = decide_bfactor(g, Budget::seconds(seconds));
    std::cout << g.vertex_count() << " vertices, degree " << g.degree() << ": " << to_string(v.verdict) << " ("
              << to_string(v.method) << ")\n";
    if (v.witness) {
        // the witness carries its own HAP table; print both
        std::cout << format_hap(hap_of(*v.witness)) << format_vector(*v.witness);
    }
    return v.verdict == Verdict::Undecided ? 2 : 0;
}
