#include "fnls/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fnls {

using nlohmann::json;

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

namespace {

std::string method_name(SolveMethod m) {
    return m == SolveMethod::petviashvili ? "petviashvili" : "gradient_flow";
}

SolveMethod method_from(const std::string& s) {
    if (s == "petviashvili") return SolveMethod::petviashvili;
    if (s == "gradient_flow") return SolveMethod::gradient_flow;
    throw std::runtime_error("unknown solve method: " + s);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    return os;
}

json profile_to_json(const SolitonProfile& p) {
    json j;
    j["kind"] = "soliton_profile";
    j["sigma"] = p.sigma;
    j["omega"] = p.omega;
    j["k"] = p.k;
    if (p.theta) j["theta"] = *p.theta;
    j["residual"] = p.residual;
    j["iterations"] = p.iterations;
    j["method"] = method_name(p.method);
    j["imag_fraction"] = p.imag_fraction;
    j["evenness"] = p.evenness;
    j["grid"] = {{"half_length", p.field.grid.half_length()},
                 {"n_points", p.field.grid.size()}};
    std::vector<double> re(p.field.size()), im(p.field.size());
    for (std::size_t i = 0; i < p.field.size(); ++i) {
        re[i] = p.field.values[i].real();
        im[i] = p.field.values[i].imag();
    }
    j["values_re"] = std::move(re);
    j["values_im"] = std::move(im);
    return j;
}

SolitonProfile profile_from_json(const json& j) {
    if (j.value("kind", "") != std::string("soliton_profile"))
        throw std::runtime_error("not a soliton profile file");
    const Grid grid{j.at("grid").at("half_length").get<double>(),
                    j.at("grid").at("n_points").get<std::size_t>()};
    Field f(grid);
    const auto& re = j.at("values_re");
    const auto& im = j.at("values_im");
    if (re.size() != grid.size() || im.size() != grid.size())
        throw std::runtime_error("profile sample count does not match grid");
    for (std::size_t i = 0; i < grid.size(); ++i)
        f.values[i] = cplx{re[i].get<double>(), im[i].get<double>()};

    SolitonProfile p{std::move(f),
                     j.at("sigma").get<double>(),
                     j.at("omega").get<double>(),
                     j.at("k").get<double>(),
                     j.at("residual").get<double>(),
                     j.at("iterations").get<int>(),
                     method_from(j.at("method").get<std::string>())};
    if (j.contains("theta")) p.theta = j.at("theta").get<double>();
    p.imag_fraction = j.value("imag_fraction", 0.0);
    p.evenness = j.value("evenness", 0.0);
    return p;
}

} // namespace

void write_profile_json(const SolitonProfile& p, std::ostream& os) {
    os << profile_to_json(p).dump(2) << '\n';
}

SolitonProfile read_profile_json(std::istream& is) {
    json j;
    is >> j;
    return profile_from_json(j);
}

void write_profile_csv(const SolitonProfile& p, std::ostream& os) {
    os << "# kind,soliton_profile\n";
    os << "# sigma," << format_double(p.sigma) << '\n';
    os << "# omega," << format_double(p.omega) << '\n';
    os << "# k," << format_double(p.k) << '\n';
    if (p.theta) os << "# theta," << format_double(*p.theta) << '\n';
    os << "# residual," << format_double(p.residual) << '\n';
    os << "# iterations," << p.iterations << '\n';
    os << "# method," << method_name(p.method) << '\n';
    os << "# half_length," << format_double(p.field.grid.half_length()) << '\n';
    os << "# n_points," << p.field.grid.size() << '\n';
    os << "x,re,im\n";
    for (std::size_t i = 0; i < p.field.size(); ++i)
        os << format_double(p.field.grid.node(i)) << ',' << format_double(p.field.values[i].real())
           << ',' << format_double(p.field.values[i].imag()) << '\n';
}

SolitonProfile read_profile_csv(std::istream& is) {
    double sigma = 0, omega = 0, k = 0, residual = 0, half_length = 0;
    std::optional<double> theta;
    int iterations = 0;
    std::size_t n_points = 0;
    std::string method = "petviashvili";
    std::vector<cplx> values;

    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line.starts_with("#")) {
            const auto comma = line.find(',');
            if (comma == std::string::npos) continue;
            const std::string key = line.substr(2, comma - 2);
            const std::string val = line.substr(comma + 1);
            if (key == "sigma") sigma = std::stod(val);
            else if (key == "omega") omega = std::stod(val);
            else if (key == "k") k = std::stod(val);
            else if (key == "theta") theta = std::stod(val);
            else if (key == "residual") residual = std::stod(val);
            else if (key == "iterations") iterations = std::stoi(val);
            else if (key == "method") method = val;
            else if (key == "half_length") half_length = std::stod(val);
            else if (key == "n_points") n_points = static_cast<std::size_t>(std::stoul(val));
            continue;
        }
        if (!header_seen) { // column header row
            header_seen = true;
            continue;
        }
        std::istringstream row(line);
        std::string x, re, im;
        if (!std::getline(row, x, ',') || !std::getline(row, re, ',') || !std::getline(row, im))
            throw std::runtime_error("malformed profile CSV row");
        values.emplace_back(std::stod(re), std::stod(im));
    }
    if (n_points == 0 || values.size() != n_points)
        throw std::runtime_error("profile CSV row count does not match n_points");

    const Grid grid{half_length, n_points};
    SolitonProfile p{Field{grid, std::move(values)}, sigma, omega, k,
                     residual, iterations, method_from(method)};
    p.theta = theta;
    return p;
}

void write_profile(const SolitonProfile& p, const std::string& path, FileFormat format) {
    auto os = open_out(path);
    if (format == FileFormat::json)
        write_profile_json(p, os);
    else
        write_profile_csv(p, os);
    if (!os) throw std::runtime_error("write failed: " + path);
}

SolitonProfile read_profile(const std::string& path, FileFormat format) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    return format == FileFormat::json ? read_profile_json(is) : read_profile_csv(is);
}

void write_trajectory_csv(const TrajectoryReport& r, std::ostream& os) {
    os << "t,mass,energy,momentum,center,shape_error\n";
    for (std::size_t i = 0; i < r.times.size(); ++i)
        os << format_double(r.times[i]) << ',' << format_double(r.mass[i]) << ','
           << format_double(r.energy[i]) << ',' << format_double(r.momentum[i]) << ','
           << format_double(r.center[i]) << ',' << format_double(r.shape_error[i]) << '\n';
}

void write_trajectory(const TrajectoryReport& r, const std::string& path) {
    auto os = open_out(path);
    write_trajectory_csv(r, os);
    if (!os) throw std::runtime_error("write failed: " + path);
}

void write_diagnostics_json(const DiagnosticsReport& r, std::ostream& os) {
    json j;
    j["sigma"] = r.sigma;
    j["pohozaev_defects"] = {r.pohozaev_defects.first, r.pohozaev_defects.second};
    j["c_value"] = r.c_value;
    json curve = json::array();
    for (const auto& [th, h] : r.h_curve) curve.push_back({th, h});
    j["h_curve"] = std::move(curve);
    j["gn_margin"] = r.gn_margin;
    if (r.sech_linf_error)
        j["sech_linf_error"] = *r.sech_linf_error;
    else
        j["sech_linf_error"] = nullptr;
    j["interpolation_defect"] = r.interpolation_defect;
    j["c_upper_bound_margin"] = r.c_upper_bound_margin;
    j["c_upper_bound_checked"] = r.c_upper_bound_checked;
    j["quotient_gap"] = r.quotient_gap;
    j["static_residual"] = r.static_residual;
    j["traveling_residual"] = r.traveling_residual;
    j["minimizer_agreement"] = r.minimizer_agreement;
    j["passed"] = r.passed;
    os << j.dump(2) << '\n';
}

void write_diagnostics(const DiagnosticsReport& r, const std::string& path) {
    auto os = open_out(path);
    write_diagnostics_json(r, os);
    if (!os) throw std::runtime_error("write failed: " + path);
}

} // namespace fnls
