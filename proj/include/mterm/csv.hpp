#pragma once

#include <string>
#include <vector>

#include "mterm/approx.hpp"
#include "mterm/extremal.hpp"
#include "mterm/trigpoly.hpp"

namespace mterm {

/// 17 significant digits, '.' decimal separator; round-trips doubles.
std::string g17(double v);

/// Writes text to a file, creating parent directories; throws on failure.
void write_text_file(const std::string& path, const std::string& text);

std::string read_text_file(const std::string& path);

/// TrigPoly block: header "k,re,im", one row per k in [-N, N].
std::string trigpoly_to_csv(const TrigPoly& poly);
TrigPoly trigpoly_from_csv(const std::string& text);

/// GridSignal block: header "j,t_j,value" (real signals).
std::string gridsignal_to_csv(const GridSignal& signal);

/// MTermResult rows: m, s, method, error, certificate, gamma
/// (gamma semicolon-joined).
std::string mterm_results_to_csv(
    const std::vector<std::pair<int, double>>& m_s,
    const std::vector<MTermResult>& results);

/// ExtremalFunction: constants header rows then the TrigPoly block.
std::string extremal_to_csv(const ExtremalFunction& fs);

}  // namespace mterm
