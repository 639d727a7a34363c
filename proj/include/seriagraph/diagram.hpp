#pragma once

#include "seriagraph/io.hpp"

#include <cstddef>
#include <string>

namespace seriagraph {

struct DiagramOptions {
    int width = 20;
    /// Which solution of the document to draw (0 = top ranked).
    std::size_t solution = 0;
};

inline constexpr char kBarFill = '#';
inline constexpr char kEmptyMarker = '|';
inline constexpr const char* kGutter = "  ";

/// One bar cell: round(frequency * width) fill characters centred in `width`
/// columns, or a single marker at the centre for a zero-width bar.
std::string centered_bar(double frequency, int width);

/// Text battleship diagram: for each group of the chosen solution, one line
/// per assemblage in solution order with its id and one centred bar per
/// class. Throws std::invalid_argument when the document holds no solution.
std::string render_diagram(const SolutionDocument& doc, const DiagramOptions& options = {});

} // namespace seriagraph
