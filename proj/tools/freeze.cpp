// Regenerates the regression fixtures that are recorded from the library
// itself rather than from the Python oracles:
//   forge_freeze sprinkle > tests/fixtures/sprinkle.json
//   forge_freeze pipeline > tests/fixtures/pipeline.json
#include <cmath>
#include <iostream>
#include <string>

#include <json.hpp>

#include "forge/connector.hpp"
#include "forge/generators.hpp"
#include "forge/pipeline.hpp"

using namespace forge;
using nlohmann::json;

namespace {

json sprinkle() {
    const std::string spec = "random_regular(5000,10,7)";
    Graph g = generate(spec);
    const Vertex usize = 200;
    double m = std::pow(std::log(static_cast<double>(g.order()) / usize), 4);
    VertexSet u(g.order()), w(g.order());
    for (Vertex v = 0; v < usize; ++v) u.insert(v);
    json runs = json::array();
    for (std::uint64_t s = 1; s <= 20; ++s) {
        auto r = sprinkled_ball(g, s, u, w, m);
        runs.push_back({{"seed", s},
                        {"reached", r.reached.count()},
                        {"sampled", r.sampled.count()},
                        {"reached_sampled", r.reached_sampled.count()},
                        {"rounds", r.rounds},
                        {"success", r.success}});
    }
    return {{"graph", spec}, {"u", usize}, {"m", m}, {"round_cap", static_cast<std::int64_t>(std::ceil(m * m))},
            {"runs", runs}};
}

json pipeline() {
    json out = json::array();
    for (const char* spec : {"random_regular(1000,4,1)", "random_regular(1000,8,1)", "complete(10)",
                             "complete_bipartite(16,16)", "blowup(random_regular(60,3,1),8)"}) {
        Graph g = generate(spec);
        BuildTrace t = dispatch(g, PipelineConfig{});
        out.push_back({{"graph", spec},
                       {"branch", t.branch},
                       {"source", t.certificate_source},
                       {"t", t.certificate ? t.certificate->t() : 0}});
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    std::string what = argc > 1 ? argv[1] : "";
    if (what == "sprinkle") {
        std::cout << sprinkle().dump(1) << "\n";
    } else if (what == "pipeline") {
        std::cout << pipeline().dump(1) << "\n";
    } else {
        std::cerr << "usage: forge_freeze sprinkle|pipeline\n";
        return 2;
    }
}
