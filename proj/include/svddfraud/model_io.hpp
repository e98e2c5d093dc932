#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>

#include "svddfraud/svdd.hpp"
#include "svddfraud/svm.hpp"

namespace svddfraud::model_io {

// Plain-text model files. Line order:
//
//   svddfraud-model 1
//   type svdd|svm
//   kernel <rbf|linear> <sigma>
//   dim <d>
//   box_c <C>
//   radius_sq <R^2>          (svdd only)
//   offset_term <value>      (svdd only)
//   bias <b>                 (svm only)
//   training_rows <N>
//   support <S>
//   <train index> <alpha> <x_1> ... <x_d>    (S lines; svm alphas are signed)
//
// Reals are printed with 17 significant digits, so a reload reproduces
// every value bit for bit.

void write_model(std::ostream& out, const SvddModel& model);
void write_model(std::ostream& out, const SvmModel& model);
void save(const std::filesystem::path& path, const SvddModel& model);
void save(const std::filesystem::path& path, const SvmModel& model);

using AnyModel = std::variant<SvddModel, SvmModel>;

AnyModel read_model(std::istream& in);
AnyModel load(const std::filesystem::path& path);

}  // namespace svddfraud::model_io
