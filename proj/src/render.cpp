#include "qcsim/render.hpp"

#include <algorithm>

namespace qcsim {

std::string render_ascii(const Circuit& c) {
    const int w = c.width;
    // cell[r][k]: glyph for wire (w-1-r) at op k; link[r][k]: vertical bar
    // between wire rows r and r+1.
    const std::size_t cols = c.ops.size();
    std::vector<std::vector<std::string>> cell(
        static_cast<std::size_t>(w), std::vector<std::string>(cols, ""));
    std::vector<std::vector<bool>> link(
        static_cast<std::size_t>(w), std::vector<bool>(cols, false));

    auto row_of = [&](int q) { return static_cast<std::size_t>(w - 1 - q); };
    auto connect = [&](int q1, int q2, std::size_t k) {
        const std::size_t top = std::min(row_of(q1), row_of(q2));
        const std::size_t bot = std::max(row_of(q1), row_of(q2));
        for (std::size_t r = top; r < bot; ++r) link[r][k] = true;
    };

    for (std::size_t k = 0; k < cols; ++k) {
        const CircuitOp& op = c.ops[k];
        if (const auto* g = std::get_if<GateOp>(&op)) {
            if (g->name == "CNOT") {
                cell[row_of(g->qubits[0])][k] = "*";
                cell[row_of(g->qubits[1])][k] = "+";
                connect(g->qubits[0], g->qubits[1], k);
            } else if (g->name == "CZ") {
                cell[row_of(g->qubits[0])][k] = "*";
                cell[row_of(g->qubits[1])][k] = "*";
                connect(g->qubits[0], g->qubits[1], k);
            } else if (g->name == "SWAP") {
                cell[row_of(g->qubits[0])][k] = "x";
                cell[row_of(g->qubits[1])][k] = "x";
                connect(g->qubits[0], g->qubits[1], k);
            } else if (g->name == "U") {
                for (int q : g->qubits) cell[row_of(q)][k] = "U";
                connect(*std::min_element(g->qubits.begin(), g->qubits.end()),
                        *std::max_element(g->qubits.begin(), g->qubits.end()), k);
            } else {
                for (int q : g->qubits) cell[row_of(q)][k] = g->name;
            }
        } else if (const auto* o = std::get_if<OracleOp>(&op)) {
            for (int q : o->inputs) cell[row_of(q)][k] = "O";
            cell[row_of(o->output)][k] = "O";
        } else {
            for (int q : std::get<MeasureOp>(op).qubits) cell[row_of(q)][k] = "M";
        }
    }

    std::vector<std::size_t> colw(cols, 1);
    for (std::size_t k = 0; k < cols; ++k)
        for (int r = 0; r < w; ++r)
            colw[k] = std::max(colw[k], cell[static_cast<std::size_t>(r)][k].size());

    std::string out;
    for (int r = 0; r < w; ++r) {
        const std::size_t rr = static_cast<std::size_t>(r);
        std::string wire = "q" + std::to_string(w - 1 - r);
        wire.resize(4, ' ');
        for (std::size_t k = 0; k < cols; ++k) {
            std::string g = cell[rr][k].empty() ? "-" : cell[rr][k];
            wire += "-";
            wire += g;
            wire.append(colw[k] - g.size() + 1, '-');
        }
        out += wire;
        out += '\n';
        if (r + 1 < w) {
            std::string gap(4, ' ');
            for (std::size_t k = 0; k < cols; ++k) {
                gap += ' ';
                gap += link[rr][k] ? "|" : " ";
                gap.append(colw[k], ' ');
            }
            while (!gap.empty() && gap.back() == ' ') gap.pop_back();
            out += gap;
            out += '\n';
        }
    }
    return out;
}

}  // namespace qcsim
