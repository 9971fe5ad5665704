#pragma once

#include <cstddef>
#include <string>

#include <nlohmann/json.hpp>

namespace singcat {

using Json = nlohmann::json;

enum class Verdict { Yes, No, Undetermined };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Yes: return "yes";
        case Verdict::No: return "no";
        default: return "undetermined";
    }
}

// Answer to a question whose exact resolution may need an unbounded search.
// Yes and No carry a witness that can be rechecked; Undetermined records the
// bound that ran out.
struct CertifiedAnswer {
    Verdict verdict = Verdict::Undetermined;
    Json witness = Json::object();
    std::size_t bound_used = 0;

    bool yes() const { return verdict == Verdict::Yes; }
    bool no() const { return verdict == Verdict::No; }
    bool undetermined() const { return verdict == Verdict::Undetermined; }

    static CertifiedAnswer make(Verdict v, Json w, std::size_t bound = 0) { return {v, std::move(w), bound}; }

    Json to_json() const {
        Json j;
        j["verdict"] = to_string(verdict);
        j["witness"] = witness;
        j["bound_used"] = bound_used;
        return j;
    }
};

}  // namespace singcat
