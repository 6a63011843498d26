#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace randpick {

using NodeId = std::uint32_t;

enum class Color : std::uint8_t { Uncolored = 0, Red = 1, Blue = 2 };

// Node coloring with cached counts. Colored nodes are frozen: repainting a
// node with a different color throws, repainting with the same color is a
// no-op. Recoloring uncolored->colored is the only transition.
class ColorState {
public:
    ColorState() = default;
    explicit ColorState(std::uint32_t n) : colors_(n, Color::Uncolored) {}

    static ColorState from_sets(std::uint32_t n, std::span<const NodeId> reds,
                                std::span<const NodeId> blues) {
        ColorState s(n);
        for (NodeId v : reds) s.set_color(v, Color::Red);
        for (NodeId v : blues) s.set_color(v, Color::Blue);
        return s;
    }

    std::uint32_t n() const { return std::uint32_t(colors_.size()); }

    Color color(NodeId v) const {
        check(v);
        return colors_[v];
    }

    bool colored(NodeId v) const { return color(v) != Color::Uncolored; }

    void set_color(NodeId v, Color c) {
        check(v);
        Color old = colors_[v];
        if (old == c) return;
        if (old != Color::Uncolored)
            throw std::invalid_argument("node " + std::to_string(v) + " is already colored");
        colors_[v] = c;
        if (c == Color::Red) ++reds_;
        else if (c == Color::Blue) ++blues_;
    }

    std::uint32_t red_count() const { return reds_; }
    std::uint32_t blue_count() const { return blues_; }
    std::uint32_t uncolored_count() const { return n() - reds_ - blues_; }

    std::vector<NodeId> nodes_with(Color c) const {
        std::vector<NodeId> out;
        for (NodeId v = 0; v < n(); ++v)
            if (colors_[v] == c) out.push_back(v);
        return out;
    }

    std::span<const Color> colors() const { return colors_; }

    friend bool operator==(const ColorState& a, const ColorState& b) {
        return a.colors_ == b.colors_;
    }

private:
    void check(NodeId v) const {
        if (v >= colors_.size())
            throw std::out_of_range("node id " + std::to_string(v) + " out of range");
    }

    std::vector<Color> colors_;
    std::uint32_t reds_ = 0;
    std::uint32_t blues_ = 0;
};

}  // namespace randpick
