#include "ctori/conic.hpp"

#include <nlohmann/json.hpp>

namespace ctori {

ConicParams ConicParams::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    ConicParams p;
    p.n = j.at("n").get<int>();
    p.c = j.at("c").get<double>();
    p.kappa = j.at("kappa").get<double>();
    p.validate();
    return p;
}

} // namespace ctori
