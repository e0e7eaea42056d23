#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace matvine {

/// Witness of a failed check. `tag` names the violated condition
/// (ML1, ML2, MS1, MS2, MS3, NotChordal, SunFound, ...).
struct Violation {
    std::string tag;
    std::string message;
    std::vector<std::string> vertices;
    std::vector<std::array<std::string, 2>> edges;
};

class Verdict {
public:
    static Verdict pass() { return Verdict{}; }
    static Verdict fail(Violation v) {
        Verdict r;
        r.violation_ = std::move(v);
        return r;
    }
    static Verdict fail(std::string tag, std::string message,
                        std::vector<std::string> vertices = {},
                        std::vector<std::array<std::string, 2>> edges = {}) {
        return fail(Violation{std::move(tag), std::move(message), std::move(vertices),
                              std::move(edges)});
    }

    bool ok() const { return !violation_.has_value(); }
    explicit operator bool() const { return ok(); }
    const std::optional<Violation>& violation() const { return violation_; }
    std::string tag() const { return violation_ ? violation_->tag : std::string{}; }

private:
    std::optional<Violation> violation_;
};

}  // namespace matvine
