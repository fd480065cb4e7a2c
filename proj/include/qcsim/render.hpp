#pragma once

#include <string>

#include "qcsim/circuit.hpp"

namespace qcsim {

/// Wires as rows (highest wire on top), time left to right. Controls are
/// `*`, CNOT targets `+`, SWAP ends `x`, oracle wires `O`, measurements `M`;
/// vertical links are `|`.
std::string render_ascii(const Circuit& c);

}  // namespace qcsim
