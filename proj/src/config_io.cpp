#include "pmkt/config_io.hpp"

#include <charconv>
#include <sstream>
#include <string>

#include "pmkt/errors.hpp"
#include "pmkt/io.hpp"

namespace pmkt {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(const std::string& source, int line, const std::string& msg) {
    throw config_error(source + ":" + std::to_string(line) + ": " + msg);
}

template <typename T>
T parse_number(std::string_view v, const std::string& source, int line) {
    T out{};
    const char* first = v.data();
    const char* last = v.data() + v.size();
    const auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc{} || res.ptr != last)
        fail(source, line, "invalid value '" + std::string(v) + "'");
    return out;
}

} // namespace

MarketConfig parse_market_config(std::string_view text, const std::string& source_name) {
    MarketConfig cfg;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(source_name, line_no, "unterminated section header");
            continue; // sections are organizational only
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) fail(source_name, line_no, "expected key = value");
        const std::string key{trim(line.substr(0, eq))};
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) fail(source_name, line_no, "empty key");
        if (value.empty()) fail(source_name, line_no, "empty value for key '" + key + "'");

        if (key == "n_firms")
            cfg.n_firms = parse_number<std::int32_t>(value, source_name, line_no);
        else if (key == "circumference")
            cfg.circumference = parse_number<double>(value, source_name, line_no);
        else if (key == "alpha")
            cfg.alpha = parse_number<double>(value, source_name, line_no);
        else if (key == "beta")
            cfg.beta = parse_number<double>(value, source_name, line_no);
        else if (key == "r_min")
            cfg.r_min = parse_number<double>(value, source_name, line_no);
        else if (key == "r_max")
            cfg.r_max = parse_number<double>(value, source_name, line_no);
        else if (key == "burn_in_steps")
            cfg.burn_in_steps = parse_number<std::int64_t>(value, source_name, line_no);
        else if (key == "sample_steps")
            cfg.sample_steps = parse_number<std::int64_t>(value, source_name, line_no);
        else if (key == "sample_stride")
            cfg.sample_stride = parse_number<std::int32_t>(value, source_name, line_no);
        else if (key == "seed")
            cfg.seed = parse_number<std::uint64_t>(value, source_name, line_no);
        else
            fail(source_name, line_no, "unknown key '" + key + "'");
    }

    try {
        cfg.validate();
    } catch (const config_error& e) {
        throw config_error(source_name + ": " + e.what());
    }
    return cfg;
}

MarketConfig load_market_config(const std::string& path) {
    if (path.empty()) return MarketConfig{};
    return parse_market_config(io::read_text_file(path), path);
}

std::string serialize_market_config(const MarketConfig& cfg) {
    std::ostringstream out;
    out << "[market]\n";
    out << "n_firms = " << cfg.n_firms << "\n";
    out << "circumference = " << io::format_double(cfg.circumference) << "\n";
    out << "alpha = " << io::format_double(cfg.alpha) << "\n";
    out << "beta = " << io::format_double(cfg.beta) << "\n";
    out << "r_min = " << io::format_double(cfg.r_min) << "\n";
    out << "r_max = " << io::format_double(cfg.r_max) << "\n";
    out << "[protocol]\n";
    out << "burn_in_steps = " << cfg.burn_in_steps << "\n";
    out << "sample_steps = " << cfg.sample_steps << "\n";
    out << "sample_stride = " << cfg.sample_stride << "\n";
    out << "seed = " << cfg.seed << "\n";
    return std::move(out).str();
}

} // namespace pmkt
