#include "seriagraph/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace seriagraph {

std::string centered_bar(double frequency, int width)
{
    if (width < 1) {
        throw std::invalid_argument("diagram width must be positive");
    }
    const auto len = static_cast<int>(std::lround(std::clamp(frequency, 0.0, 1.0) * width));
    std::string cell(static_cast<std::size_t>(width), ' ');
    if (len == 0) {
        cell[static_cast<std::size_t>((width - 1) / 2)] = kEmptyMarker;
        return cell;
    }
    const int left = (width - len) / 2;
    std::fill_n(cell.begin() + left, len, kBarFill);
    return cell;
}

namespace {

std::string centered_label(const std::string& s, int width)
{
    const auto w = static_cast<std::size_t>(width);
    if (s.size() >= w) {
        return s.substr(0, w);
    }
    const std::size_t left = (w - s.size()) / 2;
    return std::string(left, ' ') + s + std::string(w - s.size() - left, ' ');
}

void rstrip(std::string& s)
{
    while (!s.empty() && s.back() == ' ') {
        s.pop_back();
    }
}

} // namespace

std::string render_diagram(const SolutionDocument& doc, const DiagramOptions& options)
{
    if (options.width < 1) {
        throw std::invalid_argument("diagram width must be positive");
    }
    std::vector<std::vector<int>> groups;
    if (doc.kind == "seriate") {
        if (options.solution >= doc.orderings.size()) {
            throw std::invalid_argument("document has no ordering #" +
                                        std::to_string(options.solution + 1));
        }
        groups.push_back(doc.orderings[options.solution].ordering.perm);
    } else {
        if (options.solution >= doc.solutions.size()) {
            throw std::invalid_argument("document has no solution #" +
                                        std::to_string(options.solution + 1));
        }
        for (const auto& g : doc.solutions[options.solution].groups) {
            groups.push_back(g.ordering.perm);
        }
    }

    const auto matrix = doc.instance.to_matrix();
    const auto& freq = matrix.frequencies().values;
    std::size_t id_width = 2;
    for (const auto& id : matrix.ids()) {
        id_width = std::max(id_width, id.size());
    }

    std::string out;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (g > 0) {
            out += '\n';
        }
        out += "group " + std::to_string(g + 1) + " (" + std::to_string(groups[g].size()) +
               (groups[g].size() == 1 ? " assemblage)\n" : " assemblages)\n");
        std::string head = std::string(id_width, ' ');
        for (const auto& c : matrix.class_names()) {
            head += kGutter + centered_label(c, options.width);
        }
        rstrip(head);
        out += head + '\n';
        for (int row : groups[g]) {
            const auto& id = matrix.ids()[static_cast<std::size_t>(row)];
            std::string line = id + std::string(id_width - id.size(), ' ');
            for (int c = 0; c < matrix.k(); ++c) {
                line += kGutter + centered_bar(freq(row, c), options.width);
            }
            rstrip(line);
            out += line + '\n';
        }
    }
    return out;
}

} // namespace seriagraph
