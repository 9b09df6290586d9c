#ifndef MLNDS_IO_MULTIPLEX_HPP_
#define MLNDS_IO_MULTIPLEX_HPP_

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "../network.hpp"

namespace mlnds {

class ParseError : public Error {
public:
    using Error::Error;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
            ++j;
        if (j > i)
            out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

} // namespace detail

/// Parses the line format
///
///     # comment
///     node <layer> <actor>
///     edge <layer> <actor> <actor>
///
/// A layer's node set is its declared nodes plus all edge endpoints.
inline MultilayerNetwork load_multiplex(std::string_view text) {
    NetworkBuilder b;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        auto tok = detail::split_ws(line);
        if (tok.empty())
            continue;
        auto where = "line " + std::to_string(line_no) + ": ";
        if (tok[0] == "node") {
            if (tok.size() != 3)
                throw ParseError(where + "expected 'node <layer> <actor>'");
            b.add_node(tok[1], tok[2]);
        } else if (tok[0] == "edge") {
            if (tok.size() != 4)
                throw ParseError(where + "expected 'edge <layer> <actor> <actor>'");
            if (tok[2] == tok[3])
                throw ParseError(where + "self-loop on actor '" + std::string(tok[2]) + "'");
            b.add_edge(tok[1], tok[2], tok[3]);
        } else {
            throw ParseError(where + "unknown directive '" + std::string(tok[0]) + "'");
        }
    }
    return b.build();
}

inline MultilayerNetwork load_multiplex_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open network file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return load_multiplex(buf.str());
}

/// Writes nodes first (per layer, actor order), then edges.
inline std::string write_multiplex(const MultilayerNetwork& net) {
    std::string out;
    for (LayerId l : net.layers())
        for (ActorId a : net.layer_actors(l))
            out += "node " + net.layer_name(l) + " " + net.actor_name(a) + "\n";
    for (LayerId l : net.layers())
        for (auto [u, v] : net.edges(l))
            out += "edge " + net.layer_name(l) + " " + net.actor_name(u) + " " + net.actor_name(v) + "\n";
    return out;
}

} // namespace mlnds

#endif // MLNDS_IO_MULTIPLEX_HPP_
