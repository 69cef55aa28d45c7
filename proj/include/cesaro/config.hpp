#pragma once

#include "cesaro/operators.hpp"
#include "cesaro/spectra.hpp"
#include "cesaro/symbol.hpp"

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace cesaro {

/// Accepts "a", "bi", "a+bi", "a-bi", "i", "-i" with optional spaces.
/// Throws ConfigError naming `key` on anything else.
cplx parse_complex(std::string_view text, const std::string& key = "value");
std::vector<cplx> parse_complex_list(std::string_view text, const std::string& key = "value");
std::string format_complex(cplx c);

/// Flat key=value run configuration. Every key has a default; set() validates
/// the value against the key's type and rejects unknown keys.
class RunConfig {
public:
    enum class Type { Text, Choice, Real, Integer, Complex, ComplexList, Flag, Path };

    struct KeyInfo {
        std::string key;
        Type type;
        std::string fallback;
        std::vector<std::string> choices;
        std::string help;
    };

    RunConfig();

    static const std::vector<KeyInfo>& keys();
    static const KeyInfo* find(std::string_view key);

    /// Throws ConfigError for unknown keys and malformed values.
    void set(const std::string& key, const std::string& value);
    /// Lines "key = value"; '#' starts a comment. Throws ConfigError.
    void load(std::istream& in);
    void load_file(const std::string& path);

    const std::string& raw(const std::string& key) const;
    bool is_set(const std::string& key) const { return explicit_.count(key) != 0; }

    std::string text(const std::string& key) const { return raw(key); }
    double real(const std::string& key) const;
    long integer(const std::string& key) const;
    cplx complex(const std::string& key) const;
    std::vector<cplx> complex_list(const std::string& key) const;
    bool flag(const std::string& key) const;

    /// Every key with its value in normalized form.
    std::map<std::string, std::string> canonical() const;
    /// FNV-1a over the sorted canonical entries, leaving out threads and output paths.
    std::string hash() const;

    SymbolSpec symbol() const;
    SymbolSpec perturbation() const;
    SpaceSpec space() const;
    MapGrid grid() const;
    ClassifierConfig classifier() const;
    QuasinilConfig quasinil() const;
    /// threads = 0 selects default_parallelism().
    unsigned threads() const;

private:
    SymbolSpec build_symbol(const std::string& prefix) const;

    std::map<std::string, std::string> values_;
    std::map<std::string, bool> explicit_;
};

std::uint64_t fnv1a(std::string_view bytes);

} // namespace cesaro
