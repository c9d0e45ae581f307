#pragma once

// Point-set text files: one point per line, comma-separated coordinates
// ("a,b" for m = 2, "a" for m = 1); '#' starts a comment.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "torgeo/common.hpp"

namespace torgeo {

inline std::vector<std::vector<int>> parse_point_lines(std::istream& in) {
    std::vector<std::vector<int>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        // trim
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);

        std::vector<int> coords;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                size_t used = 0;
                int v = std::stoi(tok, &used);
                while (used < tok.size() && (tok[used] == ' ' || tok[used] == '\t')) ++used;
                if (used != tok.size()) throw std::invalid_argument(tok);
                coords.push_back(v);
            } catch (const std::exception&) {
                fail(errc::bad_input,
                     "line " + std::to_string(lineno) + ": cannot parse coordinate '" + tok + "'");
            }
        }
        if (coords.empty())
            fail(errc::bad_input, "line " + std::to_string(lineno) + ": empty point");
        out.push_back(std::move(coords));
    }
    return out;
}

inline std::vector<std::vector<int>> load_point_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::bad_input, "cannot open point file: " + path);
    return parse_point_lines(in);
}

}  // namespace torgeo
