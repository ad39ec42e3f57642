#include "mescale/sampling.hpp"

#include <algorithm>
#include <bit>

#include "mescale/error.hpp"
#include "mescale/sobol_sequence.hpp"

namespace mescale {

using nlohmann::json;

std::string_view to_string(DesignKind kind) {
    switch (kind) {
        case DesignKind::Oat:
            return "oat";
        case DesignKind::Saltelli:
            return "saltelli";
        case DesignKind::Grid:
            return "grid";
    }
    return "?";
}

DesignKind design_kind_from_string(std::string_view text) {
    if (text == "oat") {
        return DesignKind::Oat;
    }
    if (text == "saltelli" || text == "sobol") {
        return DesignKind::Saltelli;
    }
    if (text == "grid") {
        return DesignKind::Grid;
    }
    throw ValidationError("unknown design kind '" + std::string(text) + "'");
}

double GridMeta::value(std::size_t axis, std::size_t index) const {
    const auto& a = axes.at(axis);
    if (index + 1 == points_per_axis) {
        return a.max;
    }
    const double t = static_cast<double>(index) / static_cast<double>(points_per_axis - 1);
    return a.min + t * (a.max - a.min);
}

namespace {

std::map<std::string, double> base_assignments(const std::vector<Factor>& factors) {
    std::map<std::string, double> out;
    for (const auto& f : factors) {
        out[f.name] = f.base;
    }
    return out;
}

double map_unit(const Factor& f, double u) {
    return std::clamp(f.min + u * (f.max - f.min), f.min, f.max);
}

}  // namespace

CampaignDesign oat_design(const std::vector<Factor>& factors) {
    if (factors.empty()) {
        throw ValidationError("OAT design needs at least one factor");
    }
    validate_factor_set(factors);

    CampaignDesign design;
    design.kind = DesignKind::Oat;
    design.factors = factors;
    OatMeta meta;

    const auto base = base_assignments(factors);
    design.recipes.push_back({0, base, "oat:base"});
    for (const auto& f : factors) {
        OatTriple triple{f.name, 0, design.recipes.size(), design.recipes.size() + 1};
        auto low = base;
        low[f.name] = f.min;
        design.recipes.push_back({triple.min_run, low, "oat:min:" + f.name});
        auto high = base;
        high[f.name] = f.max;
        design.recipes.push_back({triple.max_run, high, "oat:max:" + f.name});
        meta.triples.push_back(triple);
    }
    design.meta = meta;
    return design;
}

CampaignDesign saltelli_design(const std::vector<Factor>& factors, std::size_t n, bool second_order,
                               std::string* warning) {
    if (factors.empty()) {
        throw ValidationError("Saltelli design needs at least one factor");
    }
    if (n == 0) {
        throw ValidationError("Saltelli design needs at least one base sample");
    }
    validate_factor_set(factors);
    if (warning != nullptr) {
        warning->clear();
        if (!std::has_single_bit(n)) {
            *warning = "base sample count " + std::to_string(n) +
                       " is not a power of two; Sobol balance properties are lost";
        }
    }

    const std::size_t k = factors.size();
    const auto unit = sobol_points(2 * k, n);

    SaltelliMeta meta;
    meta.n = n;
    meta.k = k;
    meta.second_order = second_order;
    for (const auto& f : factors) {
        meta.factors.push_back(f.name);
    }

    CampaignDesign design;
    design.kind = DesignKind::Saltelli;
    design.factors = factors;
    design.recipes.resize(meta.run_count());

    auto row_a = [&](std::size_t j, std::size_t col) { return map_unit(factors[col], unit[j][col]); };
    auto row_b = [&](std::size_t j, std::size_t col) { return map_unit(factors[col], unit[j][k + col]); };

    auto emit = [&](std::size_t row, const std::string& tag, auto&& value_of) {
        Recipe& r = design.recipes[row];
        r.run_id = row;
        r.design_tag = tag;
        for (std::size_t c = 0; c < k; ++c) {
            r.assignments[factors[c].name] = value_of(c);
        }
    };

    for (std::size_t j = 0; j < n; ++j) {
        const std::string js = std::to_string(j);
        emit(meta.a_row(j), "saltelli:A:" + js, [&](std::size_t c) { return row_a(j, c); });
        emit(meta.b_row(j), "saltelli:B:" + js, [&](std::size_t c) { return row_b(j, c); });
        for (std::size_t i = 0; i < k; ++i) {
            emit(meta.ab_row(i, j), "saltelli:AB" + std::to_string(i + 1) + ":" + js,
                 [&](std::size_t c) { return c == i ? row_b(j, c) : row_a(j, c); });
            if (second_order) {
                emit(meta.ba_row(i, j), "saltelli:BA" + std::to_string(i + 1) + ":" + js,
                     [&](std::size_t c) { return c == i ? row_a(j, c) : row_b(j, c); });
            }
        }
    }
    design.meta = meta;
    return design;
}

CampaignDesign grid_design(const std::vector<Factor>& factors, const std::vector<std::string>& axes,
                           std::size_t points_per_axis) {
    if (axes.empty() || axes.size() > 2) {
        throw ValidationError("grid design needs one or two axes, got " + std::to_string(axes.size()));
    }
    if (points_per_axis < 2) {
        throw ValidationError("grid design needs at least 2 points per axis");
    }
    if (axes.size() == 2 && axes[0] == axes[1]) {
        throw ValidationError("grid axes must be distinct");
    }
    validate_factor_set(factors);

    GridMeta meta;
    meta.points_per_axis = points_per_axis;
    for (const auto& name : axes) {
        const auto it = std::find_if(factors.begin(), factors.end(),
                                     [&](const Factor& f) { return f.name == name; });
        if (it == factors.end()) {
            throw ValidationError("grid axis '" + name + "' is not a declared factor");
        }
        meta.axes.push_back({it->name, it->min, it->max});
    }

    CampaignDesign design;
    design.kind = DesignKind::Grid;
    design.factors = factors;
    const auto base = base_assignments(factors);
    const std::size_t outer = points_per_axis;
    const std::size_t inner = axes.size() == 2 ? points_per_axis : 1;
    for (std::size_t i = 0; i < outer; ++i) {
        for (std::size_t j = 0; j < inner; ++j) {
            auto values = base;
            values[meta.axes[0].factor] = meta.value(0, i);
            std::string tag = "grid:" + std::to_string(i);
            if (axes.size() == 2) {
                values[meta.axes[1].factor] = meta.value(1, j);
                tag += "," + std::to_string(j);
            }
            design.recipes.push_back({design.recipes.size(), std::move(values), std::move(tag)});
        }
    }
    design.meta = meta;
    return design;
}

json to_json(const CampaignDesign& design) {
    json factors = json::array();
    for (const auto& f : design.factors) {
        factors.push_back(to_json(f));
    }
    json meta;
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, OatMeta>) {
                json triples = json::array();
                for (const auto& t : m.triples) {
                    triples.push_back(
                        {{"factor", t.factor}, {"base", t.base_run}, {"min", t.min_run}, {"max", t.max_run}});
                }
                meta = {{"triples", triples}};
            } else if constexpr (std::is_same_v<T, SaltelliMeta>) {
                meta = {{"n", m.n},
                        {"k", m.k},
                        {"second_order", m.second_order},
                        {"factors", m.factors},
                        {"layout", m.second_order ? "A,B,AB_1..AB_k,BA_1..BA_k" : "A,B,AB_1..AB_k"}};
            } else {
                json axes = json::array();
                for (const auto& a : m.axes) {
                    axes.push_back({{"factor", a.factor}, {"min", a.min}, {"max", a.max}});
                }
                meta = {{"axes", axes}, {"points_per_axis", m.points_per_axis}};
            }
        },
        design.meta);
    json recipes = json::array();
    for (const auto& r : design.recipes) {
        recipes.push_back(to_json(r));
    }
    return json{{"kind", std::string(to_string(design.kind))},
                {"factors", factors},
                {"meta", meta},
                {"recipes", recipes}};
}

CampaignDesign design_from_json(const json& j) {
    try {
        CampaignDesign d;
        d.kind = design_kind_from_string(j.at("kind").get<std::string>());
        for (const auto& f : j.at("factors")) {
            d.factors.push_back(factor_from_json(f));
        }
        for (const auto& r : j.at("recipes")) {
            d.recipes.push_back(recipe_from_json(r));
        }
        const json& m = j.at("meta");
        switch (d.kind) {
            case DesignKind::Oat: {
                OatMeta meta;
                for (const auto& t : m.at("triples")) {
                    meta.triples.push_back({t.at("factor").get<std::string>(), t.at("base").get<std::size_t>(),
                                            t.at("min").get<std::size_t>(), t.at("max").get<std::size_t>()});
                }
                d.meta = meta;
                break;
            }
            case DesignKind::Saltelli: {
                SaltelliMeta meta;
                meta.n = m.at("n").get<std::size_t>();
                meta.k = m.at("k").get<std::size_t>();
                meta.second_order = m.at("second_order").get<bool>();
                meta.factors = m.at("factors").get<std::vector<std::string>>();
                d.meta = meta;
                break;
            }
            case DesignKind::Grid: {
                GridMeta meta;
                for (const auto& a : m.at("axes")) {
                    meta.axes.push_back(
                        {a.at("factor").get<std::string>(), a.at("min").get<double>(), a.at("max").get<double>()});
                }
                meta.points_per_axis = m.at("points_per_axis").get<std::size_t>();
                d.meta = meta;
                break;
            }
        }
        validate(d);
        return d;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("design: ") + e.what());
    }
}

void validate(const CampaignDesign& d) {
    validate_factor_set(d.factors);
    std::size_t expected = 0;
    switch (d.kind) {
        case DesignKind::Oat: {
            const auto* m = std::get_if<OatMeta>(&d.meta);
            if (m == nullptr || m->triples.size() != d.factors.size()) {
                throw ValidationError("OAT meta does not match factor list");
            }
            expected = 1 + 2 * d.factors.size();
            for (const auto& t : m->triples) {
                if (t.base_run >= expected || t.min_run >= expected || t.max_run >= expected) {
                    throw ValidationError("OAT triple for '" + t.factor + "' references a missing run");
                }
            }
            break;
        }
        case DesignKind::Saltelli: {
            const auto* m = std::get_if<SaltelliMeta>(&d.meta);
            if (m == nullptr || m->k != d.factors.size() || m->factors.size() != m->k) {
                throw ValidationError("Saltelli meta does not match factor list");
            }
            expected = m->run_count();
            break;
        }
        case DesignKind::Grid: {
            const auto* m = std::get_if<GridMeta>(&d.meta);
            if (m == nullptr || m->axes.empty() || m->axes.size() > 2 || m->points_per_axis < 2) {
                throw ValidationError("grid meta is malformed");
            }
            expected = 1;
            for (std::size_t i = 0; i < m->axes.size(); ++i) {
                expected *= m->points_per_axis;
            }
            break;
        }
    }
    if (d.recipes.size() != expected) {
        throw ValidationError("design holds " + std::to_string(d.recipes.size()) + " recipes, layout needs " +
                              std::to_string(expected));
    }
    std::map<std::string, const Factor*> by_name;
    for (const auto& f : d.factors) {
        by_name[f.name] = &f;
    }
    for (std::size_t i = 0; i < d.recipes.size(); ++i) {
        const auto& r = d.recipes[i];
        if (r.run_id != i) {
            throw ValidationError("recipe at position " + std::to_string(i) + " has run_id " +
                                  std::to_string(r.run_id));
        }
        for (const auto& [name, value] : r.assignments) {
            const auto it = by_name.find(name);
            if (it == by_name.end()) {
                throw ValidationError("recipe " + std::to_string(i) + " assigns undeclared factor '" + name + "'");
            }
            if (value < it->second->min || value > it->second->max) {
                throw ValidationError("recipe " + std::to_string(i) + " assigns '" + name + "' outside its range");
            }
        }
    }
}

}  // namespace mescale
