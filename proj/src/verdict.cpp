#include "bracecalc/verdict.hpp"

namespace bracecalc {

std::string status_name(Status s) {
    switch (s) {
        case Status::Holds: return "Holds";
        case Status::Fails: return "Fails";
        case Status::HoldsUpToDegree: return "HoldsUpToDegree";
        case Status::Unknown: return "Unknown";
    }
    return "?";
}

std::string Verdict::summary() const {
    std::string out = status_name(status);
    if (status == Status::HoldsUpToDegree) out += "(" + std::to_string(degree) + ")";
    if (status == Status::Fails && !witness.empty()) out += " (witness: " + witness + ")";
    if (!caveats.empty()) {
        out += " [";
        for (size_t i = 0; i < caveats.size(); ++i) out += (i ? ", " : "") + caveats[i];
        out += "]";
    }
    return out;
}

}  // namespace bracecalc
