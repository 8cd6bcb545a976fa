#include "tailassoc/pipeline/simulate.hpp"

#include "tailassoc/error.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

namespace tailassoc {

std::string simulate_csv(const CopulaModel& model, std::size_t n, std::uint64_t seed) {
    const auto s = sample(model, n, seed);
    std::string out = "index,x,y\n";
    char line[96];
    for (std::size_t i = 0; i < s.size(); ++i) {
        std::snprintf(line, sizeof line, "%zu,%.17g,%.17g\n", i + 1, s.x()[i], s.y()[i]);
        out += line;
    }
    return out;
}

void simulate_command(const CopulaModel& model, std::size_t n, std::uint64_t seed, const std::string& path) {
    const auto body = simulate_csv(model, n, seed);
    if (path == "-") {
        std::cout << body << std::flush;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    require(out.good(), ErrorKind::IoError, "cannot open '" + path + "' for writing");
    out << body;
    out.flush();
    require(out.good(), ErrorKind::IoError, "write error on '" + path + "'");
}

} // namespace tailassoc
