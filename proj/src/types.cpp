#include "fracdim/types.hpp"

namespace fracdim {

const char* to_string(GeneratorKind kind) {
    switch (kind) {
        case GeneratorKind::weierstrass: return "weierstrass";
        case GeneratorKind::fbm: return "fbm";
        case GeneratorKind::external: return "external";
    }
    return "unknown";
}

GeneratorKind generator_kind_from_string(const std::string& name) {
    if (name == "weierstrass") return GeneratorKind::weierstrass;
    if (name == "fbm") return GeneratorKind::fbm;
    if (name == "external") return GeneratorKind::external;
    throw std::invalid_argument("unknown generator kind: " + name);
}

}  // namespace fracdim
