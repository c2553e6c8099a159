#include "hnbc/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "hnbc/errors.hpp"

namespace hnbc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) { throw ConfigError(message); }

json parse_json(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded())
        fail(what + ": not valid JSON");
    return j;
}

const json& require(const json& obj, const char* key, const std::string& ctx) {
    if (!obj.is_object() || !obj.contains(key))
        fail(ctx + ": missing field '" + key + "'");
    return obj.at(key);
}

double as_number(const json& value, const std::string& ctx) {
    if (!value.is_number())
        fail(ctx + " must be a number");
    return value.get<double>();
}

double number_field(const json& obj, const char* key, const std::string& ctx) {
    return as_number(require(obj, key, ctx), ctx + "." + key);
}

double number_or(const json& obj, const char* key, double fallback,
                 const std::string& ctx) {
    if (!obj.contains(key))
        return fallback;
    return as_number(obj.at(key), ctx + "." + key);
}

int int_field(const json& obj, const char* key, const std::string& ctx) {
    const json& value = require(obj, key, ctx);
    if (!value.is_number_integer())
        fail(ctx + "." + key + " must be an integer");
    return value.get<int>();
}

HerglotzFunction herglotz_from_json(const json& j, const std::string& ctx) {
    if (!j.is_object())
        fail(ctx + " must be an object");
    const double slope = number_or(j, "h0", 0.0, ctx);
    const double offset = number_or(j, "h", 0.0, ctx);
    std::vector<PoleTerm> poles;
    if (j.contains("poles")) {
        const json& arr = j.at("poles");
        if (!arr.is_array())
            fail(ctx + ".poles must be an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string pole_ctx = ctx + ".poles[" + std::to_string(i) + "]";
            poles.push_back({number_field(arr[i], "hk", pole_ctx),
                             number_field(arr[i], "delta", pole_ctx)});
        }
    }
    try {
        return HerglotzFunction(slope, offset, std::move(poles));
    } catch (const NotHerglotz& e) {
        fail(ctx + ": " + e.what());
    }
}

Potential potential_from_json(const json& j) {
    const std::string ctx = "potential";
    if (!j.is_object())
        fail(ctx + " must be an object");
    const json& type = require(j, "type", ctx);
    if (!type.is_string())
        fail(ctx + ".type must be a string");
    const std::string kind = type.get<std::string>();
    try {
        if (kind == "zero")
            return Potential::zero();
        if (kind == "constant")
            return Potential::constant(number_field(j, "c", ctx));
        if (kind == "sampled") {
            const json& arr = require(j, "values", ctx);
            if (!arr.is_array())
                fail(ctx + ".values must be an array");
            std::vector<double> values;
            for (std::size_t i = 0; i < arr.size(); ++i)
                values.push_back(
                    as_number(arr[i], ctx + ".values[" + std::to_string(i) + "]"));
            return Potential::sampled(std::move(values));
        }
    } catch (const ConfigError& e) {
        fail(ctx + ": " + e.what());
    }
    fail(ctx + ".type must be one of 'zero', 'constant', 'sampled'");
}

SpectralDatum datum_from_json(const json& j, std::size_t i) {
    const std::string ctx = "data[" + std::to_string(i) + "]";
    SpectralDatum d;
    d.n = int_field(j, "n", ctx);
    d.lambda = number_field(j, "lambda", ctx);
    d.gamma = number_field(j, "gamma", ctx);
    d.beta = number_field(j, "beta", ctx);
    d.chi_prime = number_field(j, "chi_prime", ctx);
    return d;
}

/// 17 significant digits: enough to reproduce any double bit-for-bit.
std::string fmt(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

void write_herglotz_body(std::ostringstream& out, const HerglotzFunction& f) {
    out << "{\"h0\": " << fmt(f.slope()) << ", \"h\": " << fmt(f.offset())
        << ", \"poles\": [";
    for (std::size_t i = 0; i < f.poles().size(); ++i) {
        if (i)
            out << ", ";
        out << "{\"hk\": " << fmt(f.poles()[i].location)
            << ", \"delta\": " << fmt(f.poles()[i].weight) << "}";
    }
    out << "], \"index\": " << f.index() << "}";
}

} // namespace

Problem parse_problem(const std::string& text) {
    const json j = parse_json(text, "problem configuration");
    if (!j.is_object())
        fail("problem configuration must be a JSON object");
    Problem problem;
    if (j.contains("potential"))
        problem.q = potential_from_json(j.at("potential"));
    if (j.contains("f"))
        problem.f = herglotz_from_json(j.at("f"), "f");
    if (j.contains("F"))
        problem.F = herglotz_from_json(j.at("F"), "F");
    if (j.contains("solver")) {
        const json& s = j.at("solver");
        if (!s.is_object())
            fail("solver must be an object");
        const std::string ctx = "solver";
        problem.solver.ode_rel_tol =
            number_or(s, "ode_rel_tol", problem.solver.ode_rel_tol, ctx);
        problem.solver.ode_abs_tol =
            number_or(s, "ode_abs_tol", problem.solver.ode_abs_tol, ctx);
        problem.solver.eigen_tol =
            number_or(s, "eigen_tol", problem.solver.eigen_tol, ctx);
        if (s.contains("n_max"))
            problem.solver.n_max = int_field(s, "n_max", ctx);
        try {
            problem.solver.validate();
        } catch (const ConfigError& e) {
            fail(std::string("solver: ") + e.what());
        }
    }
    return problem;
}

Spectrum parse_spectrum(const std::string& text) {
    const json j = parse_json(text, "spectrum");
    const std::string ctx = "spectrum";
    Spectrum sp;
    sp.L = number_field(j, "L", ctx);
    sp.ind_f = int_field(j, "ind_f", ctx);
    sp.ind_F = int_field(j, "ind_F", ctx);
    sp.tail_constant = number_or(j, "tail_constant", 0.0, ctx);
    const json& arr = require(j, "data", ctx);
    if (!arr.is_array())
        fail("spectrum.data must be an array");
    for (std::size_t i = 0; i < arr.size(); ++i)
        sp.data.push_back(datum_from_json(arr[i], i));
    try {
        sp.validate();
    } catch (const Error& e) {
        fail(std::string("spectrum: ") + e.what());
    }
    return sp;
}

PartialSpectrum parse_partial_spectrum(const std::string& text) {
    const json j = parse_json(text, "partial spectrum");
    const std::string ctx = "partial spectrum";
    PartialSpectrum sp;
    sp.L = number_field(j, "L", ctx);
    sp.ind_f = int_field(j, "ind_f", ctx);
    sp.ind_F = int_field(j, "ind_F", ctx);
    sp.tail_constant = number_or(j, "tail_constant", 0.0, ctx);
    const json& arr = require(j, "data", ctx);
    if (!arr.is_array())
        fail("partial spectrum data must be an array");
    std::size_t with_beta_count = 0;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const json& e = arr[i];
        const std::string dctx = "data[" + std::to_string(i) + "]";
        PartialDatum d;
        d.n = int_field(e, "n", dctx);
        const auto optional_number = [&](const char* key) -> std::optional<double> {
            const json& value = require(e, key, dctx);
            if (value.is_null())
                return std::nullopt;
            return as_number(value, dctx + "." + key);
        };
        d.lambda = optional_number("lambda");
        d.gamma = optional_number("gamma");
        if (e.contains("beta")) {
            ++with_beta_count;
            if (!e.at("beta").is_null())
                d.beta = as_number(e.at("beta"), dctx + ".beta");
        }
        const auto optional_guess = [&](const char* key) -> std::optional<double> {
            if (!e.contains(key) || e.at(key).is_null())
                return std::nullopt;
            return as_number(e.at(key), dctx + "." + key);
        };
        d.lambda_guess = optional_guess("lambda_guess");
        d.gamma_guess = optional_guess("gamma_guess");
        d.beta_guess = optional_guess("beta_guess");
        sp.data.push_back(d);
    }
    if (with_beta_count != 0 && with_beta_count != arr.size())
        fail("beta must be present (possibly null) on every row or "
             "omitted everywhere");
    sp.with_beta = with_beta_count == arr.size() && !sp.data.empty();
    try {
        sp.validate();
    } catch (const Error& e) {
        fail(std::string("partial spectrum: ") + e.what());
    }
    return sp;
}

HerglotzFunction parse_herglotz(const std::string& text) {
    return herglotz_from_json(parse_json(text, "boundary function"),
                              "boundary function");
}

std::string write_spectrum_json(const Spectrum& spectrum) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"L\": " << fmt(spectrum.L) << ",\n";
    out << "  \"ind_f\": " << spectrum.ind_f << ",\n";
    out << "  \"ind_F\": " << spectrum.ind_F << ",\n";
    out << "  \"tail_constant\": " << fmt(spectrum.tail_constant) << ",\n";
    out << "  \"data\": [\n";
    for (std::size_t i = 0; i < spectrum.data.size(); ++i) {
        const SpectralDatum& d = spectrum.data[i];
        out << "    {\"n\": " << d.n << ", \"lambda\": " << fmt(d.lambda)
            << ", \"gamma\": " << fmt(d.gamma) << ", \"beta\": " << fmt(d.beta)
            << ", \"chi_prime\": " << fmt(d.chi_prime) << "}"
            << (i + 1 < spectrum.data.size() ? "," : "") << "\n";
    }
    out << "  ]\n}\n";
    return out.str();
}

std::string write_spectrum_csv(const Spectrum& spectrum) {
    std::ostringstream out;
    out << "n,lambda,gamma,beta,chi_prime\n";
    for (const SpectralDatum& d : spectrum.data)
        out << d.n << ',' << fmt(d.lambda) << ',' << fmt(d.gamma) << ','
            << fmt(d.beta) << ',' << fmt(d.chi_prime) << "\n";
    return out.str();
}

std::string write_herglotz_json(const HerglotzFunction& function) {
    std::ostringstream out;
    write_herglotz_body(out, function);
    out << "\n";
    return out.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail("cannot open '" + path + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad())
        fail("error while reading '" + path + "'");
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        fail("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out)
        fail("error while writing '" + path + "'");
}

} // namespace hnbc
