#include "mixagg/json_io.hpp"

#include <nlohmann/json.hpp>

namespace mixagg {

std::string to_json(const GridDistribution1D& d) {
    nlohmann::json j;
    j["grid"] = d.grid();
    j["cdf"] = d.cdf();
    j["interp"] = d.interp() == Interp::step ? "step" : "linear";
    return j.dump();
}

GridDistribution1D grid_distribution_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    Interp interp = Interp::step;
    if (j.contains("interp") && j["interp"].get<std::string>() == "linear")
        interp = Interp::linear;
    return GridDistribution1D(j.at("grid").get<std::vector<double>>(),
                              j.at("cdf").get<std::vector<double>>(), interp);
}

std::string to_json(const ParticleDistributionND& d) {
    nlohmann::json j;
    j["points"] = nlohmann::json::array();
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto p = d.point(i);
        j["points"].push_back(std::vector<double>(p.begin(), p.end()));
    }
    j["weights"] = d.weights();
    if (d.radius()) j["radius"] = *d.radius();
    return j.dump();
}

ParticleDistributionND particle_distribution_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    const auto& pts = j.at("points");
    if (pts.empty()) throw std::invalid_argument("particle distribution: no points");
    const int dim = static_cast<int>(pts.front().size());
    std::vector<double> flat;
    flat.reserve(pts.size() * static_cast<std::size_t>(dim));
    for (const auto& row : pts) {
        if (static_cast<int>(row.size()) != dim)
            throw std::invalid_argument("particle distribution: ragged points");
        for (const auto& x : row) flat.push_back(x.get<double>());
    }
    std::optional<double> radius;
    if (j.contains("radius")) radius = j["radius"].get<double>();
    return ParticleDistributionND(std::move(flat), j.at("weights").get<std::vector<double>>(),
                                  dim, radius);
}

}  // namespace mixagg
