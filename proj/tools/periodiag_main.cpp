// periodiag: periodic-correlation modeling and diagnostics for seasonal
// time series. Subcommands cover ingestion, periodic statistics, PAR and
// seasonal ARMA fitting, residual diagnostics, and reproducible experiments.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "periodiag/diagnostics.hpp"
#include "periodiag/errors.hpp"
#include "periodiag/experiments.hpp"
#include "periodiag/io.hpp"
#include "periodiag/model_json.hpp"
#include "periodiag/par.hpp"
#include "periodiag/periodic_stats.hpp"
#include "periodiag/sarima.hpp"
#include "periodiag/series.hpp"

namespace {

using namespace periodiag;

struct CommonOpts {
    std::string data_path;
    int s = 12;
    std::string layout = "flat";
    std::string transform = "none";
    double log_c = 0.0;
    std::string out_path;
    std::string format = "pretty";
};

std::ostream& open_output(const std::string& path, std::ofstream& file) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) {
        throw ParseError(0, "cannot open output file: " + path);
    }
    return file;
}

SeasonalSeries load_series(const CommonOpts& opts) {
    const CsvLayout layout =
        opts.layout == "year-by-period" ? CsvLayout::year_by_period : CsvLayout::flat_column;
    SeasonalSeries series = read_csv(opts.data_path, layout, opts.s);
    if (opts.transform == "log") {
        return log_transform(series);
    }
    if (opts.transform == "log-plus-c") {
        return log_plus_c_transform(series, opts.log_c);
    }
    return series;
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_transform = true) {
    cmd->add_option("data", opts.data_path, "input CSV file")->required();
    cmd->add_option("--s", opts.s, "periods per year")->capture_default_str();
    cmd->add_option("--layout", opts.layout, "CSV layout: flat | year-by-period")
        ->check(CLI::IsMember({"flat", "year-by-period"}))
        ->capture_default_str();
    if (with_transform) {
        cmd->add_option("--transform", opts.transform, "value transform: none | log | log-plus-c")
            ->check(CLI::IsMember({"none", "log", "log-plus-c"}))
            ->capture_default_str();
        cmd->add_option("--log-c", opts.log_c, "shift used by log-plus-c");
    }
    cmd->add_option("-o,--out", opts.out_path, "write output to this file instead of stdout");
    cmd->add_option("--format", opts.format, "output format: pretty | csv")
        ->check(CLI::IsMember({"pretty", "csv"}))
        ->capture_default_str();
}

std::vector<int> parse_order_list(const std::string& text, int expected) {
    std::vector<int> values;
    std::string token;
    std::stringstream ss(text);
    while (std::getline(ss, token, ',')) {
        values.push_back(std::stoi(token));
    }
    if (expected > 0 && static_cast<int>(values.size()) == 1) {
        values.assign(expected, values[0]);
    }
    if (expected > 0 && static_cast<int>(values.size()) != expected) {
        throw std::invalid_argument("expected " + std::to_string(expected) +
                                    " comma-separated orders, got " + text);
    }
    return values;
}

void print_eval_csv(std::ostream& out, const ForecastEval& eval) {
    out << "forecast,actual\n";
    for (int i = 0; i < eval.n; ++i) {
        out << format_double(eval.forecasts[i]) << "," << format_double(eval.actuals[i]) << "\n";
    }
}

void print_eval_summary(std::ostream& out, const ForecastEval& eval) {
    out << "# model: " << eval.label << "  n: " << eval.n
        << "  rmse: " << format_double(eval.rmse, 12) << "  mae: " << format_double(eval.mae, 12)
        << "\n";
}

ForecastEval read_eval_csv(const std::string& path, const std::string& label) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(0, "cannot open file: " + path);
    }
    std::vector<double> forecasts, actuals;
    std::string line;
    long number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw ParseError(number, "expected 'forecast,actual' rows");
        }
        try {
            forecasts.push_back(std::stod(line.substr(0, comma)));
            actuals.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            if (number == 1) {  // header row
                forecasts.clear();
                actuals.clear();
                continue;
            }
            throw ParseError(number, "cannot parse forecast/actual pair");
        }
    }
    return ForecastEval::from_pairs(label, std::move(forecasts), std::move(actuals));
}

int run_stats(const CommonOpts& opts, const std::string& quantity, int max_lag) {
    const SeasonalSeries series = load_series(opts);
    std::ofstream file;
    std::ostream& out = open_output(opts.out_path, file);
    const double band = 1.96 / std::sqrt(static_cast<double>(series.n_years()));

    out << "m,lag,value,n_pairs,band\n";
    if (quantity == "pacf") {
        const PeriodicPacf pacf = periodic_pacf(series, max_lag);
        for (int m = 1; m <= series.s(); ++m) {
            for (int k = 1; k <= max_lag; ++k) {
                out << m << "," << k << "," << format_double(pacf.pacf[m - 1][k - 1]) << ","
                    << series.n_years() << "," << format_double(band, 6) << "\n";
            }
        }
        return 0;
    }
    const PeriodicAcf acf = periodic_autocovariance(series, max_lag);
    const bool want_rho = quantity == "rho";
    for (int m = 1; m <= series.s(); ++m) {
        for (int lag = 0; lag <= max_lag; ++lag) {
            const double value = want_rho ? acf.rho[m - 1][lag] : acf.gamma[m - 1][lag];
            out << m << "," << lag << "," << format_double(value) << ","
                << acf.n_pairs[m - 1][lag] << ",";
            if (want_rho) out << format_double(band, 6);
            out << "\n";
        }
    }
    return 0;
}

void write_residuals_csv(const std::string& path, const std::vector<double>& residuals) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError(0, "cannot open output file: " + path);
    }
    out << "residual\n";
    for (double r : residuals) out << format_double(r) << "\n";
}

void print_diag_report(std::ostream& out, const DiagnosticReport& report,
                       const std::string& format) {
    if (format == "csv") {
        out << "m,r1,n_years_eff\n";
        for (int m = 1; m <= report.s; ++m) {
            out << m << "," << format_double(report.r1[m - 1]) << ","
                << report.n_years_eff[m - 1] << "\n";
        }
        out << "S,df,p_value\n";
        out << format_double(report.S, 12) << "," << report.df << ","
            << format_double(report.p_value, 12) << "\n";
        return;
    }
    out << "periodic-correlation check of residuals\n";
    out << "  m    r_m(1)      n_m\n";
    for (int m = 1; m <= report.s; ++m) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%3d  %9.4f  %6d\n", m, report.r1[m - 1],
                      report.n_years_eff[m - 1]);
        out << buf;
    }
    out << "S = " << format_double(report.S, 6) << " on " << report.df
        << " df, p-value = " << format_double(report.p_value, 6) << "\n";
    if (report.ljung_box) {
        out << "Ljung-Box = " << format_double(report.ljung_box->statistic, 6) << " on "
            << report.ljung_box->df << " df, p-value = "
            << format_double(report.ljung_box->p_value, 6) << "\n";
    }
}

int dispatch(CLI::App& app, int argc, char** argv);

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"periodic correlation modeling and diagnostics for seasonal series"};
    app.require_subcommand(1);
    try {
        return dispatch(app, argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: invalid_argument: " << e.what() << "\n";
        return 1;
    }
}

namespace {

int dispatch(CLI::App& app, int argc, char** argv) {
    // ---- stats ----------------------------------------------------------
    auto* stats_cmd = app.add_subcommand("stats", "periodic means/ACF/PACF tables");
    CommonOpts stats_opts;
    std::string stats_quantity = "rho";
    int stats_max_lag = 12;
    add_common(stats_cmd, stats_opts);
    stats_cmd->add_option("--quantity", stats_quantity, "gamma | rho | pacf")
        ->check(CLI::IsMember({"gamma", "rho", "pacf"}))
        ->capture_default_str();
    stats_cmd->add_option("--max-lag", stats_max_lag, "maximum lag (or PACF order)")
        ->capture_default_str();

    // ---- par ------------------------------------------------------------
    auto* par_cmd = app.add_subcommand("par", "periodic autoregression");
    par_cmd->require_subcommand(1);

    auto* par_fit = par_cmd->add_subcommand("fit", "fit a PAR model with given orders");
    CommonOpts par_fit_opts;
    std::string par_fit_orders = "1";
    std::string par_fit_residuals;
    add_common(par_fit, par_fit_opts);
    par_fit->add_option("--orders", par_fit_orders,
                        "per-period orders, comma-separated (single value = all periods)")
        ->capture_default_str();
    par_fit->add_option("--residuals", par_fit_residuals, "also write residuals CSV here");

    auto* par_select = par_cmd->add_subcommand("select", "order selection");
    CommonOpts par_select_opts;
    std::string par_method = "minimal";
    std::string par_criterion = "bic";
    int par_p_max = 5;
    double par_alpha = 0.05;
    add_common(par_select, par_select_opts);
    par_select->add_option("--method", par_method, "minimal | subset")
        ->check(CLI::IsMember({"minimal", "subset"}))
        ->capture_default_str();
    par_select->add_option("--criterion", par_criterion, "aic | bic (subset method)")
        ->check(CLI::IsMember({"aic", "bic"}))
        ->capture_default_str();
    par_select->add_option("--p-max", par_p_max, "maximum order searched")->capture_default_str();
    par_select->add_option("--alpha", par_alpha, "PACF band level (minimal method)")
        ->capture_default_str();

    auto* par_forecast = par_cmd->add_subcommand("forecast", "holdout one-step forecasts");
    CommonOpts par_forecast_opts;
    int par_holdout = 3;
    std::string par_forecast_method = "minimal";
    int par_forecast_p_max = 5;
    double par_forecast_alpha = 0.05;
    add_common(par_forecast, par_forecast_opts);
    par_forecast->add_option("--holdout-years", par_holdout, "years reserved for scoring")
        ->capture_default_str();
    par_forecast->add_option("--method", par_forecast_method, "minimal | subset")
        ->check(CLI::IsMember({"minimal", "subset"}))
        ->capture_default_str();
    par_forecast->add_option("--p-max", par_forecast_p_max, "maximum order searched")
        ->capture_default_str();
    par_forecast->add_option("--alpha", par_forecast_alpha, "PACF band level")
        ->capture_default_str();

    // ---- sarima ---------------------------------------------------------
    auto* sarima_cmd = app.add_subcommand("sarima", "multiplicative seasonal ARMA");
    sarima_cmd->require_subcommand(1);
    auto* sarima_fit_cmd = sarima_cmd->add_subcommand("fit", "fit by conditional least squares");
    CommonOpts sarima_opts;
    std::string sarima_order = "1,0,1";
    std::string sarima_seasonal = "0,1,1";
    std::optional<bool> sarima_mean;
    std::string sarima_residuals;
    add_common(sarima_fit_cmd, sarima_opts);
    sarima_fit_cmd->add_option("--order", sarima_order, "p,d,q")->capture_default_str();
    sarima_fit_cmd->add_option("--seasonal", sarima_seasonal, "P,D,Q")->capture_default_str();
    sarima_fit_cmd->add_flag_callback("--mean", [&sarima_mean] { sarima_mean = true; },
                                      "force a mean term");
    sarima_fit_cmd->add_flag_callback("--no-mean", [&sarima_mean] { sarima_mean = false; },
                                      "suppress the mean term");
    sarima_fit_cmd->add_option("--residuals", sarima_residuals, "also write residuals CSV here");

    // ---- diag -----------------------------------------------------------
    auto* diag_cmd = app.add_subcommand("diag", "residual diagnostics");
    diag_cmd->require_subcommand(1);

    auto* diag_s = diag_cmd->add_subcommand("s-test", "periodic-correlation check");
    std::string diag_s_path;
    int diag_s_s = 12;
    std::string diag_s_out, diag_s_format = "pretty";
    diag_s->add_option("residuals", diag_s_path, "residuals CSV (single column)")->required();
    diag_s->add_option("--s", diag_s_s, "periods per year")->capture_default_str();
    diag_s->add_option("-o,--out", diag_s_out, "output file");
    diag_s->add_option("--format", diag_s_format, "pretty | csv")
        ->check(CLI::IsMember({"pretty", "csv"}))
        ->capture_default_str();

    auto* diag_lb = diag_cmd->add_subcommand("ljung-box", "modified portmanteau check");
    std::string diag_lb_path;
    int diag_lb_lags = 20;
    int diag_lb_params = 0;
    diag_lb->add_option("residuals", diag_lb_path, "residuals CSV (single column)")->required();
    diag_lb->add_option("--max-lag", diag_lb_lags, "number of lags pooled")->capture_default_str();
    diag_lb->add_option("--fitted-params", diag_lb_params, "ARMA parameters fitted")
        ->capture_default_str();

    // ---- exp ------------------------------------------------------------
    auto* exp_cmd = app.add_subcommand("exp", "reproducible experiments");
    exp_cmd->require_subcommand(1);

    auto* exp_table1 = exp_cmd->add_subcommand(
        "table1", "Monte Carlo size study of the periodic-correlation check");
    double exp_phi = 0.0;
    int exp_reps = 1000, exp_years = 17, exp_s = 12;
    std::uint64_t exp_seed = 20230101;
    std::string exp_out;
    exp_table1->add_option("--phi", exp_phi, "AR(1) coefficient")->required();
    exp_table1->add_option("--reps", exp_reps, "replicates")->capture_default_str();
    exp_table1->add_option("--n-years", exp_years, "years per replicate")->capture_default_str();
    exp_table1->add_option("--s", exp_s, "periods per year")->capture_default_str();
    exp_table1->add_option("--seed", exp_seed, "master seed")->capture_default_str();
    exp_table1->add_option("-o,--out", exp_out, "output file");

    auto* exp_backtest = exp_cmd->add_subcommand("backtest", "holdout forecast comparison");
    CommonOpts exp_bt_opts;
    std::string exp_bt_model = "par-minimal";
    std::string exp_bt_order = "1,0,1";
    std::string exp_bt_seasonal = "0,1,1";
    int exp_bt_holdout = 3;
    int exp_bt_p_max = 5;
    add_common(exp_backtest, exp_bt_opts);
    exp_backtest->add_option("--model", exp_bt_model, "par-minimal | par-subset | sarima")
        ->check(CLI::IsMember({"par-minimal", "par-subset", "sarima"}))
        ->capture_default_str();
    exp_backtest->add_option("--order", exp_bt_order, "sarima p,d,q")->capture_default_str();
    exp_backtest->add_option("--seasonal", exp_bt_seasonal, "sarima P,D,Q")
        ->capture_default_str();
    exp_backtest->add_option("--holdout", exp_bt_holdout, "holdout years")->capture_default_str();
    exp_backtest->add_option("--p-max", exp_bt_p_max, "PAR order bound")->capture_default_str();

    auto* exp_combine = exp_cmd->add_subcommand("combine", "pool forecast files");
    std::vector<std::string> exp_combine_files;
    std::string exp_combine_method = "average";
    int exp_combine_window = 12;
    std::string exp_combine_out;
    exp_combine->add_option("files", exp_combine_files, "two or more forecast CSVs")
        ->required()
        ->expected(2, -1);
    exp_combine->add_option("--method", exp_combine_method, "average | inverse-mse")
        ->check(CLI::IsMember({"average", "inverse-mse"}))
        ->capture_default_str();
    exp_combine->add_option("--window", exp_combine_window, "trailing window for inverse-mse")
        ->capture_default_str();
    exp_combine->add_option("-o,--out", exp_combine_out, "output file");

    // ---- analyze --------------------------------------------------------
    auto* analyze_cmd = app.add_subcommand(
        "analyze", "ingest, fit a seasonal ARMA, and run residual checks");
    CommonOpts analyze_opts;
    std::string analyze_order = "1,0,1";
    std::string analyze_seasonal = "0,1,1";
    std::optional<bool> analyze_mean;
    int analyze_lb_lags = 0;  // 0 = 2*s
    std::string analyze_model_out, analyze_residuals_out;
    add_common(analyze_cmd, analyze_opts);
    analyze_cmd->add_option("--order", analyze_order, "p,d,q")->capture_default_str();
    analyze_cmd->add_option("--seasonal", analyze_seasonal, "P,D,Q")->capture_default_str();
    analyze_cmd->add_flag_callback("--mean", [&analyze_mean] { analyze_mean = true; },
                                   "force a mean term");
    analyze_cmd->add_flag_callback("--no-mean", [&analyze_mean] { analyze_mean = false; },
                                   "suppress the mean term");
    analyze_cmd->add_option("--lb-lags", analyze_lb_lags, "Ljung-Box lags (default 2*s)");
    analyze_cmd->add_option("--model-out", analyze_model_out, "write fit JSON here");
    analyze_cmd->add_option("--residuals-out", analyze_residuals_out, "write residuals here");

    app.parse(argc, argv);

    if (stats_cmd->parsed()) {
        return run_stats(stats_opts, stats_quantity, stats_max_lag);
    }

    if (par_fit->parsed()) {
        const SeasonalSeries series = load_series(par_fit_opts);
        const std::vector<int> orders = parse_order_list(par_fit_orders, series.s());
        const ParModel model = fit_par(series, orders);
        std::ofstream file;
        open_output(par_fit_opts.out_path, file) << par_model_to_json(model) << "\n";
        if (!par_fit_residuals.empty()) {
            write_residuals_csv(par_fit_residuals, residuals_par(model, series));
        }
        return 0;
    }

    if (par_select->parsed()) {
        const SeasonalSeries series = load_series(par_select_opts);
        ParModel model;
        if (par_method == "minimal") {
            const std::vector<int> orders = select_orders_minimal(series, par_p_max, par_alpha);
            model = fit_par(series, orders);
        } else {
            const InformationCriterion criterion = par_criterion == "aic"
                                                       ? InformationCriterion::aic
                                                       : InformationCriterion::bic;
            model = select_orders_subset(series, par_p_max, criterion);
        }
        std::ofstream file;
        open_output(par_select_opts.out_path, file) << par_model_to_json(model) << "\n";
        return 0;
    }

    if (par_forecast->parsed()) {
        const SeasonalSeries series = load_series(par_forecast_opts);
        const ModelKind kind = par_forecast_method == "minimal"
                                   ? ModelKind::par_minimal(par_forecast_p_max,
                                                            par_forecast_alpha)
                                   : ModelKind::par_subset(par_forecast_p_max);
        const ForecastEval eval = backtest(series, kind, par_holdout);
        std::ofstream file;
        std::ostream& out = open_output(par_forecast_opts.out_path, file);
        print_eval_summary(out, eval);
        print_eval_csv(out, eval);
        return 0;
    }

    if (sarima_fit_cmd->parsed()) {
        const SeasonalSeries series = load_series(sarima_opts);
        const std::vector<int> order = parse_order_list(sarima_order, 3);
        const std::vector<int> seasonal = parse_order_list(sarima_seasonal, 3);
        SarimaSpec spec;
        spec.p = order[0];
        spec.d = order[1];
        spec.q = order[2];
        spec.ps = seasonal[0];
        spec.ds = seasonal[1];
        spec.qs = seasonal[2];
        spec.s = series.s();
        spec.include_mean = sarima_mean;
        const SarimaFit fit = fit_sarima(series, spec);
        std::ofstream file;
        open_output(sarima_opts.out_path, file) << sarima_fit_to_json(fit) << "\n";
        if (!sarima_residuals.empty()) {
            write_residuals_csv(sarima_residuals, fit.residuals);
        }
        return 0;
    }

    if (diag_s->parsed()) {
        const std::vector<double> residuals = read_value_column(diag_s_path);
        const DiagnosticReport report = s_statistic(residuals, diag_s_s);
        std::ofstream file;
        print_diag_report(open_output(diag_s_out, file), report, diag_s_format);
        return 0;  // a significant test is a finding, not an error
    }

    if (diag_lb->parsed()) {
        const std::vector<double> residuals = read_value_column(diag_lb_path);
        const LjungBoxResult result = ljung_box(residuals, diag_lb_lags, diag_lb_params);
        std::cout << "Ljung-Box = " << format_double(result.statistic, 6) << " on " << result.df
                  << " df, p-value = " << format_double(result.p_value, 6) << "\n";
        return 0;
    }

    if (exp_table1->parsed()) {
        const MonteCarloSummary summary =
            table1_experiment(exp_phi, exp_years, exp_s, exp_reps, exp_seed);
        std::ofstream file;
        std::ostream& out = open_output(exp_out, file);
        out << "phi1,n_reps,mean_S,var_S,empirical_level,critical,seed,redraws\n";
        out << format_double(summary.phi1, 6) << "," << summary.n_reps << ","
            << format_double(summary.mean_S) << "," << format_double(summary.var_S) << ","
            << format_double(summary.empirical_level) << ","
            << format_double(summary.critical, 6) << "," << summary.seed << ","
            << summary.redraws << "\n";
        return 0;
    }

    if (exp_backtest->parsed()) {
        const SeasonalSeries series = load_series(exp_bt_opts);
        ModelKind kind;
        if (exp_bt_model == "par-minimal") {
            kind = ModelKind::par_minimal(exp_bt_p_max);
        } else if (exp_bt_model == "par-subset") {
            kind = ModelKind::par_subset(exp_bt_p_max);
        } else {
            const std::vector<int> order = parse_order_list(exp_bt_order, 3);
            const std::vector<int> seasonal = parse_order_list(exp_bt_seasonal, 3);
            SarimaSpec spec;
            spec.p = order[0];
            spec.d = order[1];
            spec.q = order[2];
            spec.ps = seasonal[0];
            spec.ds = seasonal[1];
            spec.qs = seasonal[2];
            spec.s = series.s();
            kind = ModelKind::sarima(spec);
        }
        const ForecastEval eval = backtest(series, kind, exp_bt_holdout);
        std::ofstream file;
        std::ostream& out = open_output(exp_bt_opts.out_path, file);
        print_eval_summary(out, eval);
        print_eval_csv(out, eval);
        return 0;
    }

    if (exp_combine->parsed()) {
        std::vector<ForecastEval> evals;
        for (const std::string& path : exp_combine_files) {
            evals.push_back(read_eval_csv(path, path));
        }
        const CombineMethod method = exp_combine_method == "average"
                                         ? CombineMethod::simple_average
                                         : CombineMethod::inverse_mse;
        const ForecastEval combined = combine_forecasts(evals, method, exp_combine_window);
        std::ofstream file;
        std::ostream& out = open_output(exp_combine_out, file);
        print_eval_summary(out, combined);
        print_eval_csv(out, combined);
        return 0;
    }

    if (analyze_cmd->parsed()) {
        const SeasonalSeries series = load_series(analyze_opts);
        const std::vector<int> order = parse_order_list(analyze_order, 3);
        const std::vector<int> seasonal = parse_order_list(analyze_seasonal, 3);
        SarimaSpec spec;
        spec.p = order[0];
        spec.d = order[1];
        spec.q = order[2];
        spec.ps = seasonal[0];
        spec.ds = seasonal[1];
        spec.qs = seasonal[2];
        spec.s = series.s();
        spec.include_mean = analyze_mean;
        const SarimaFit fit = fit_sarima(series, spec);

        DiagnosticReport report = s_statistic(fit.residuals, series.s());
        const int lb_lags = analyze_lb_lags > 0 ? analyze_lb_lags : 2 * series.s();
        report.ljung_box = ljung_box(fit.residuals, lb_lags, spec.n_coef());

        std::ofstream file;
        std::ostream& out = open_output(analyze_opts.out_path, file);
        out << "series: " << series.label() << "  (N = " << series.n_years()
            << " years, s = " << series.s() << ")\n";
        out << "model: " << ModelKind::sarima(spec).label()
            << "  css = " << format_double(fit.css, 6)
            << "  sigma2 = " << format_double(fit.sigma2, 6) << "\n";
        print_diag_report(out, report, analyze_opts.format);
        if (!analyze_model_out.empty()) {
            std::ofstream model_file(analyze_model_out);
            model_file << sarima_fit_to_json(fit) << "\n";
        }
        if (!analyze_residuals_out.empty()) {
            write_residuals_csv(analyze_residuals_out, fit.residuals);
        }
        return 0;
    }

    return 2;
}

}  // namespace
