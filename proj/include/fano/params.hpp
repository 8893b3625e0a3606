#ifndef FANO_PARAMS_HPP
#define FANO_PARAMS_HPP

// Parameters (n, m, d, k) of the Y-F(Y) relations.

#include <sstream>
#include <string>
#include <vector>

#include "fano/errors.hpp"

namespace fano {

enum class Regime { Low, High };

struct ParamSet {
    int n = 0, m = 0, d = 0, k = 0;

    int r() const { return n - m; }
    int w_size() const { return d - k - 1; }
    int v_size() const { return k + 1; }
    bool low() const { return d - k - 1 <= n - m - 1; }
    Regime regime() const { return low() ? Regime::Low : Regime::High; }

    // Size restrictions under which the relations are stated.
    std::vector<std::string> violations() const {
        std::vector<std::string> out;
        if (!(d >= k + 3)) out.push_back("d >= k+3 fails");
        if (!(k + 1 <= n - m - 1)) out.push_back("k+1 <= n-m-1 fails");
        if (!(n - m <= m - 1)) out.push_back("n-m <= m-1 fails");
        if (!(d >= n - m + 2)) out.push_back("d >= n-m+2 fails");
        return out;
    }

    // Minimal conditions for the strata to make sense.
    void validate_structural() const {
        if (n < 1) throw ParameterViolation("n must be >= 1 in " + str());
        if (m < 0 || m >= n) throw ParameterViolation("need 0 <= m < n in " + str());
        if (k < 0) throw ParameterViolation("k must be >= 0 in " + str());
        if (d < k + 2) throw ParameterViolation("need d >= k+2 in " + str());
        if (k + 1 > n - m + 1) throw ParameterViolation("need k+1 <= n-m+1 in " + str());
    }

    void validate_strict() const {
        validate_structural();
        auto v = violations();
        if (!v.empty()) {
            std::string msg = str() + ":";
            for (const auto& s : v) msg += " " + s + ";";
            throw ParameterViolation(msg);
        }
    }

    std::string str() const {
        return std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(d) + "," + std::to_string(k);
    }

    // "n,m,d,k"
    static ParamSet parse(const std::string& text) {
        std::vector<int> v;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t pos = 0;
                int x = std::stoi(item, &pos);
                while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
                if (pos != item.size()) throw ParseError("bad number '" + item + "'");
                v.push_back(x);
            } catch (const std::logic_error&) {
                throw ParseError("bad number '" + item + "' in params '" + text + "'");
            }
        }
        if (v.size() != 4) throw ParseError("params need n,m,d,k; got '" + text + "'");
        return {v[0], v[1], v[2], v[3]};
    }

    bool operator==(const ParamSet&) const = default;
};

} // namespace fano

#endif
