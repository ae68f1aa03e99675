// Streams a BA graph through a degree counter without storing it and prints
// the degrees of the first few nodes next to the d*sqrt(n/i) growth law.
#include "bagen/bagen.hpp"

#include <cmath>
#include <cstdio>
#include <thread>

int main() {
    bagen::GenParams p;
    p.n         = 1'000'000;
    p.d         = 4;
    p.hash.kind = bagen::HashKind::Crc;

    const bagen::Generator gen(p);
    const unsigned workers = std::max(1U, std::thread::hardware_concurrency());
    const auto res         = bagen::run(gen, bagen::DegreeCountConsumer(1000), workers);

    std::printf("%llu edges, %.2f probes/edge, %.3f s\n", static_cast<unsigned long long>(res.stats.edges_emitted),
                res.stats.probes_per_edge(), res.stats.elapsed_seconds);
    for (std::uint64_t i : {1, 10, 100, 999}) {
        std::printf("node %4llu  degree %6llu  expected ~%.0f\n", static_cast<unsigned long long>(i),
                    static_cast<unsigned long long>(res.result.counts[i]),
                    static_cast<double>(p.d) * std::sqrt(static_cast<double>(p.n) / static_cast<double>(i)));
    }
}
