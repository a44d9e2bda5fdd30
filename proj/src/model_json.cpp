#include "periodiag/model_json.hpp"

#include <json.hpp>

namespace periodiag {

using nlohmann::json;

std::string par_model_to_json(const ParModel& model) {
    json doc;
    doc["type"] = "par";
    doc["s"] = model.s;
    doc["orders"] = model.orders;
    doc["phi"] = model.phi;
    doc["mu"] = model.mu;
    doc["sigma2"] = model.sigma2;
    if (!model.mask.empty()) {
        json mask = json::array();
        for (const auto& row : model.mask) {
            json r = json::array();
            for (char c : row) r.push_back(c != 0);
            mask.push_back(std::move(r));
        }
        doc["mask"] = std::move(mask);
    }
    doc["parameter_count"] = model.parameter_count();
    return doc.dump(2);
}

ParModel par_model_from_json(const std::string& text) {
    const json doc = json::parse(text);
    ParModel model;
    model.s = doc.at("s").get<int>();
    model.orders = doc.at("orders").get<std::vector<int>>();
    model.phi = doc.at("phi").get<std::vector<std::vector<double>>>();
    model.mu = doc.at("mu").get<std::vector<double>>();
    model.sigma2 = doc.at("sigma2").get<std::vector<double>>();
    if (doc.contains("mask")) {
        for (const auto& row : doc.at("mask")) {
            std::vector<char> r;
            for (const auto& v : row) r.push_back(v.get<bool>() ? 1 : 0);
            model.mask.push_back(std::move(r));
        }
    }
    return model;
}

std::string sarima_fit_to_json(const SarimaFit& fit) {
    json doc;
    doc["type"] = "sarima";
    doc["order"] = {fit.spec.p, fit.spec.d, fit.spec.q};
    doc["seasonal_order"] = {fit.spec.ps, fit.spec.ds, fit.spec.qs};
    doc["s"] = fit.spec.s;
    doc["include_mean"] = fit.spec.with_mean();
    doc["ar"] = fit.params.ar;
    doc["ma"] = fit.params.ma;
    doc["seasonal_ar"] = fit.params.sar;
    doc["seasonal_ma"] = fit.params.sma;
    doc["mean"] = fit.params.mean;
    doc["sigma2"] = fit.sigma2;
    doc["css"] = fit.css;
    doc["converged"] = fit.converged;
    doc["iterations"] = fit.iterations;
    doc["residuals"] = fit.residuals;
    return doc.dump(2);
}

SarimaFit sarima_fit_from_json(const std::string& text) {
    const json doc = json::parse(text);
    SarimaFit fit;
    const auto order = doc.at("order");
    const auto seasonal = doc.at("seasonal_order");
    fit.spec.p = order.at(0).get<int>();
    fit.spec.d = order.at(1).get<int>();
    fit.spec.q = order.at(2).get<int>();
    fit.spec.ps = seasonal.at(0).get<int>();
    fit.spec.ds = seasonal.at(1).get<int>();
    fit.spec.qs = seasonal.at(2).get<int>();
    fit.spec.s = doc.at("s").get<int>();
    fit.spec.include_mean = doc.at("include_mean").get<bool>();
    fit.params.ar = doc.at("ar").get<std::vector<double>>();
    fit.params.ma = doc.at("ma").get<std::vector<double>>();
    fit.params.sar = doc.at("seasonal_ar").get<std::vector<double>>();
    fit.params.sma = doc.at("seasonal_ma").get<std::vector<double>>();
    fit.params.mean = doc.at("mean").get<double>();
    fit.sigma2 = doc.at("sigma2").get<double>();
    fit.params.sigma2 = fit.sigma2;
    fit.css = doc.at("css").get<double>();
    fit.converged = doc.at("converged").get<bool>();
    fit.iterations = doc.at("iterations").get<int>();
    if (doc.contains("residuals")) {
        fit.residuals = doc.at("residuals").get<std::vector<double>>();
    }
    return fit;
}

}  // namespace periodiag
