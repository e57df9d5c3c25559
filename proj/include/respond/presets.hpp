#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "respond/commands.hpp"
#include "respond/model.hpp"

namespace respond {

/// One CSV of a figure preset: a model plus either a linear or a third-order
/// scan, and the parameter values that distinguish it from its siblings.
struct PresetDataset {
  std::string file;
  std::string panel;
  VibronicModel model;
  bool third = false;
  cli::LinearRequest linear;
  cli::ThirdRequest scan;
  std::vector<std::pair<std::string, double>> parameters;
};

struct FigurePreset {
  std::string name;
  std::string description;
  std::vector<PresetDataset> datasets;
};

/// fig1, figS1, fig2, fig3, fig4, fig5
std::vector<std::string> preset_names();
/// Throws SchemaError for unknown names.
FigurePreset figure_preset(std::string_view name);

/// Writes every dataset as <dir>/<file> and the resolved parameters as
/// <dir>/<name>.json. Returns the written paths (sidecar last).
std::vector<std::filesystem::path> write_figure(const FigurePreset& preset, const std::filesystem::path& dir,
                                                int threads = 0);

}  // namespace respond
