#pragma once

// File formats and report serialization.
//
// All reals are written with 17 significant digits; +inf is written as the
// string "inf" in both JSON and CSV.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "definetti/definetti.hpp"
#include "definetti/generators.hpp"
#include "definetti/optimizer.hpp"

namespace definetti {

/// Normalization tolerance applied when loading law files.
inline constexpr double kLawFileTol = 1e-9;

/// "%.17g", or "inf" for +infinity.
std::string format_real(double x);

/// Minimal streaming JSON emitter with fixed number formatting.
class JsonWriter {
public:
    explicit JsonWriter(std::ostream& out, bool pretty = true) : out_(out), pretty_(pretty) {}

    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(std::string_view k);
    JsonWriter& value(double x);
    JsonWriter& value(int x);
    JsonWriter& value(std::uint64_t x);
    JsonWriter& value(bool x);
    JsonWriter& value(std::string_view s);
    JsonWriter& value(const char* s);
    JsonWriter& null();
    /// Array of reals on a single line.
    JsonWriter& real_array(const std::vector<double>& xs);
    JsonWriter& int_array(const std::vector<int>& xs);

private:
    void before_value();
    void newline();

    std::ostream& out_;
    bool pretty_;
    struct Frame {
        bool first = true;
        bool is_object = false;
    };
    std::vector<Frame> stack_;
    bool after_key_ = false;
    int inline_depth_ = 0;
};

// Law files: {"alphabet_size": m, "n": n, "type_probs": [{"counts": [...], "seq_prob": q}, ...]}
void write_law(std::ostream& out, const ExchangeableLaw& law);
void write_law(JsonWriter& json, const ExchangeableLaw& law);
ExchangeableLaw parse_law(std::string_view text);
ExchangeableLaw load_law(const std::string& path);
void save_law(const std::string& path, const ExchangeableLaw& law);

GeneratorSpec parse_generator_spec(std::string_view text);

enum class Units { nats, bits };

/// Column order of certificate CSV rows.
inline constexpr std::string_view kCertificateCsvHeader =
    "n,k,m_star,D,thm_bound,cor_bound_H,cor_bound_logA,tv,pinsker_tv,df_tv_ref,first_bound,second_rate,atom_count";

std::string certificate_csv_row(const Certificate& c, Units units = Units::nats);
void write_certificate(JsonWriter& json, const Certificate& c, Units units = Units::nats);

struct CsvTable {
    std::string header;
    std::vector<std::vector<std::string>> rows;
};
CsvTable parse_csv(std::string_view text);
/// Reals are re-parsed and re-formatted, so output(parse(x)) == x for files
/// written by this library.
std::string write_csv(const CsvTable& table);

void write_fit_result(JsonWriter& json, const FitResult& fit);
void write_mixing_measure(JsonWriter& json, const MixingMeasure& mu);
void write_search_report(JsonWriter& json, const SearchResult& result, int restarts, int steps);

}  // namespace definetti
