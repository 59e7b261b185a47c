// SPDX-License-Identifier: Apache-2.0
//
// Minimal helpers for the plot-ready CSV files the tools emit. Numbers use
// the shortest representation that round-trips, lines end with LF.

#pragma once

#include <filesystem>
#include <fstream>
#include <string>

namespace csb {

std::string format_number(double value);

/// Opens path for binary writing (so no CRLF translation); throws IoError.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace csb
