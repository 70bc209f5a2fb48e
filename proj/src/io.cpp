//------------------------------------------------------------------------------
//
//   Copyright 2026 The fdyn Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include "fdyn/io.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace fdyn {

using Json = nlohmann::ordered_json;

std::string format_double(double value)
{
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return {buf, res.ptr};
}

double parse_double(std::string_view text, std::string const &context)
{
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t'))
  {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
  {
    text.remove_suffix(1);
  }
  double value = 0.0;
  auto const *first = text.data();
  if (!text.empty() && text.front() == '+')
  {
    ++first;
  }
  auto res = std::from_chars(first, text.data() + text.size(), value);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size())
  {
    throw ParseError(context + ": '" + std::string(text) + "' is not a number");
  }
  return value;
}

std::string read_file(std::filesystem::path const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw IoError("cannot open '" + path.string() + "' for reading");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(std::filesystem::path const &path, std::string const &content)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
  {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  out << content;
  if (!out)
  {
    throw IoError("failed writing '" + path.string() + "'");
  }
}

// --- JSON manifests ----------------------------------------------------------

namespace {

Json parse_json(std::string const &text, std::string const &what)
{
  try
  {
    return Json::parse(text);
  }
  catch (nlohmann::json::parse_error const &e)
  {
    throw ParseError(what + ": malformed JSON (" + e.what() + ")");
  }
}

Json const &field(Json const &obj, char const *name, std::string const &where)
{
  if (!obj.is_object() || !obj.contains(name))
  {
    throw ParseError(where + ": missing field '" + name + "'");
  }
  return obj.at(name);
}

std::vector<double> number_array(Json const &arr, std::string const &where)
{
  if (!arr.is_array())
  {
    throw ParseError(where + ": expected an array of numbers");
  }
  std::vector<double> out;
  out.reserve(arr.size());
  for (std::size_t q = 0; q < arr.size(); ++q)
  {
    if (!arr[q].is_number())
    {
      throw ParseError(where + "[" + std::to_string(q) + "]: expected a number");
    }
    out.push_back(arr[q].get<double>());
  }
  return out;
}

std::string string_field(Json const &obj, char const *name, std::string const &where)
{
  auto const &f = field(obj, name, where);
  if (!f.is_string())
  {
    throw ParseError(where + ": field '" + name + "' must be a string");
  }
  return f.get<std::string>();
}

Json encode_object(Object const &o)
{
  Json arr = Json::array();
  switch (o.index())
  {
  case 0: {
    auto const &lap = std::get<0>(o);
    arr.push_back(lap.dim());
    for (double v : lap.entries())
    {
      arr.push_back(v);
    }
    break;
  }
  case 1:
    for (double v : std::get<1>(o).values())
    {
      arr.push_back(v);
    }
    break;
  default: {
    auto const &s = std::get<2>(o);
    arr.push_back(s.landmarks());
    for (auto const &c : s.coords())
    {
      arr.push_back(c.real());
      arr.push_back(c.imag());
    }
    break;
  }
  }
  return arr;
}

std::size_t leading_count(std::vector<double> const &payload, std::string const &where,
                          char const *what)
{
  if (payload.empty())
  {
    throw ParseError(where + ": empty payload, expected the " + what + " first");
  }
  double const c = payload.front();
  if (!(c >= 1.0) || c != std::floor(c) || c > 1e6)
  {
    throw ParseError(where + ": leading " + what + " must be a positive integer");
  }
  return static_cast<std::size_t>(c);
}

Object decode_object(Json const &arr, ObjectSpaceTag tag,
                     std::optional<ProbabilityGrid> const &prob_grid, std::string const &where)
{
  auto payload = number_array(arr, where);
  try
  {
    switch (tag.kind)
    {
    case SpaceKind::network: {
      std::size_t const r = leading_count(payload, where, "node count");
      if (payload.size() != 1 + r * r)
      {
        throw ParseError(where + ": network payload has " + std::to_string(payload.size()) +
                         " values, expected " + std::to_string(1 + r * r) + " (r = " +
                         std::to_string(r) + ")");
      }
      payload.erase(payload.begin());
      return GraphLaplacian(r, std::move(payload));
    }
    case SpaceKind::distribution: {
      if (payload.size() != prob_grid->size())
      {
        throw ParseError(where + ": distribution payload has " + std::to_string(payload.size()) +
                         " values, expected " + std::to_string(prob_grid->size()));
      }
      return QuantileDistribution(*prob_grid, std::move(payload));
    }
    case SpaceKind::shape: {
      std::size_t const k = leading_count(payload, where, "landmark count");
      if (payload.size() != 1 + 2 * k)
      {
        throw ParseError(where + ": shape payload has " + std::to_string(payload.size()) +
                         " values, expected " + std::to_string(1 + 2 * k) + " (k = " +
                         std::to_string(k) + ")");
      }
      std::vector<std::complex<double>> coords(k);
      for (std::size_t j = 0; j < k; ++j)
      {
        coords[j] = {payload[1 + 2 * j], payload[2 + 2 * j]};
      }
      return PlanarShape(std::move(coords));
    }
    }
  }
  catch (ParseError const &)
  {
    throw;
  }
  catch (Error const &e)
  {
    throw Error(e.code(), where + ": " + e.what());
  }
  throw ParseError(where + ": unknown object space");
}

void write_header(Json &j, char const *format, ObjectSpaceTag tag, TimeGrid const &grid,
                  std::optional<ProbabilityGrid> const &prob_grid)
{
  j["format"]  = format;
  j["version"] = kFormatVersion;
  j["space"]   = std::string(to_string(tag.kind));
  j["metric"]  = std::string(to_string(tag.metric()));
  j["grid"]    = grid.points();
  if (prob_grid)
  {
    j["prob_grid"] = prob_grid->levels();
  }
}

struct Header
{
  ObjectSpaceTag                 tag;
  TimeGrid                       grid;
  std::optional<ProbabilityGrid> prob_grid;
};

Header read_header(Json const &j, char const *format, std::string const &what)
{
  if (string_field(j, "format", what) != format)
  {
    throw ParseError(what + ": expected format '" + format + "'");
  }
  auto const &version = field(j, "version", what);
  if (!version.is_number_integer() || version.get<int>() != kFormatVersion)
  {
    throw ParseError(what + ": unsupported format version");
  }
  ObjectSpaceTag tag{parse_space_kind(string_field(j, "space", what))};
  if (j.contains("metric") && string_field(j, "metric", what) != to_string(tag.metric()))
  {
    throw ParseError(what + ": metric '" + string_field(j, "metric", what) +
                     "' does not match space '" + std::string(to_string(tag.kind)) + "'");
  }
  std::optional<ProbabilityGrid> prob_grid;
  TimeGrid grid = [&] {
    try
    {
      return TimeGrid(number_array(field(j, "grid", what), what + ": grid"));
    }
    catch (ParseError const &)
    {
      throw;
    }
    catch (Error const &e)
    {
      throw Error(e.code(), what + ": grid: " + e.what());
    }
  }();
  if (tag.kind == SpaceKind::distribution)
  {
    try
    {
      prob_grid.emplace(number_array(field(j, "prob_grid", what), what + ": prob_grid"));
    }
    catch (ParseError const &)
    {
      throw;
    }
    catch (Error const &e)
    {
      throw Error(e.code(), what + ": prob_grid: " + e.what());
    }
  }
  return {tag, std::move(grid), std::move(prob_grid)};
}

std::optional<ProbabilityGrid> prob_grid_of(std::vector<Object> const &objects)
{
  if (!objects.empty() && objects.front().index() == 1)
  {
    return std::get<1>(objects.front()).grid();
  }
  return std::nullopt;
}

}  // namespace

std::string sample_to_json(ObjectTrajectorySample const &sample)
{
  Json j;
  write_header(j, "fdyn.sample", sample.tag(), sample.grid(),
               prob_grid_of(sample.subjects().front().objects));
  Json subjects = Json::array();
  for (auto const &s : sample.subjects())
  {
    Json js;
    js["id"] = s.id;
    if (!s.group.empty())
    {
      js["group"] = s.group;
    }
    Json objs = Json::array();
    for (auto const &o : s.objects)
    {
      objs.push_back(encode_object(o));
    }
    js["objects"] = std::move(objs);
    subjects.push_back(std::move(js));
  }
  j["subjects"] = std::move(subjects);
  return j.dump() + "\n";
}

ObjectTrajectorySample sample_from_json(std::string const &text)
{
  std::string const what = "sample manifest";
  Json const        j    = parse_json(text, what);
  auto              hdr  = read_header(j, "fdyn.sample", what);
  auto const       &subj = field(j, "subjects", what);
  if (!subj.is_array())
  {
    throw ParseError(what + ": 'subjects' must be an array");
  }
  std::size_t const              m = hdr.grid.size();
  std::vector<SubjectTrajectory> subjects;
  subjects.reserve(subj.size());
  for (std::size_t i = 0; i < subj.size(); ++i)
  {
    std::string const where = "subjects[" + std::to_string(i) + "]";
    SubjectTrajectory s;
    s.id = string_field(subj[i], "id", where);
    if (subj[i].contains("group"))
    {
      s.group = string_field(subj[i], "group", where);
    }
    std::string const sw   = "subject '" + s.id + "'";
    auto const       &objs = field(subj[i], "objects", sw);
    if (!objs.is_array() || objs.size() != m)
    {
      throw ParseError(sw + ": expected " + std::to_string(m) + " objects, found " +
                       std::to_string(objs.is_array() ? objs.size() : 0));
    }
    for (std::size_t k = 0; k < m; ++k)
    {
      s.objects.push_back(
          decode_object(objs[k], hdr.tag, hdr.prob_grid, sw + ", grid index " + std::to_string(k)));
    }
    subjects.push_back(std::move(s));
  }
  return {hdr.tag, std::move(hdr.grid), std::move(subjects)};
}

void write_sample(ObjectTrajectorySample const &sample, std::filesystem::path const &path)
{
  write_file(path, sample_to_json(sample));
}

ObjectTrajectorySample load_sample(std::filesystem::path const &path)
{
  try
  {
    return sample_from_json(read_file(path));
  }
  catch (IoError const &)
  {
    throw;
  }
  catch (ConvergenceError const &)
  {
    throw;
  }
  catch (Error const &e)
  {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string mean_to_json(MeanTrajectory const &mean)
{
  Json j;
  write_header(j, "fdyn.mean_trajectory", mean.tag, mean.grid, prob_grid_of(mean.objects));
  j["provenance"] =
      mean.provenance == MeanProvenance::estimated ? "estimated" : "supplied-oracle";
  Json objs = Json::array();
  for (auto const &o : mean.objects)
  {
    objs.push_back(encode_object(o));
  }
  j["objects"] = std::move(objs);
  return j.dump() + "\n";
}

MeanTrajectory mean_from_json(std::string const &text)
{
  std::string const what = "mean trajectory";
  Json const        j    = parse_json(text, what);
  auto              hdr  = read_header(j, "fdyn.mean_trajectory", what);
  auto const        prov = string_field(j, "provenance", what);
  if (prov != "estimated" && prov != "supplied-oracle")
  {
    throw ParseError(what + ": unknown provenance '" + prov + "'");
  }
  auto const &objs = field(j, "objects", what);
  if (!objs.is_array() || objs.size() != hdr.grid.size())
  {
    throw ParseError(what + ": expected " + std::to_string(hdr.grid.size()) + " objects");
  }
  std::vector<Object> objects;
  for (std::size_t k = 0; k < objs.size(); ++k)
  {
    objects.push_back(
        decode_object(objs[k], hdr.tag, hdr.prob_grid, what + ", grid index " + std::to_string(k)));
  }
  return {hdr.tag, std::move(hdr.grid), std::move(objects),
          prov == "estimated" ? MeanProvenance::estimated : MeanProvenance::supplied_oracle};
}

void write_mean(MeanTrajectory const &mean, std::filesystem::path const &path)
{
  write_file(path, mean_to_json(mean));
}

MeanTrajectory load_mean(std::filesystem::path const &path)
{
  try
  {
    return mean_from_json(read_file(path));
  }
  catch (IoError const &)
  {
    throw;
  }
  catch (Error const &e)
  {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

// --- CSV ---------------------------------------------------------------------

CsvTable parse_csv(std::string const &text)
{
  CsvTable           table;
  std::istringstream in(text);
  std::string        line;
  bool               first = true;
  while (std::getline(in, line))
  {
    if (!line.empty() && line.back() == '\r')
    {
      line.pop_back();
    }
    if (line.empty())
    {
      continue;
    }
    std::vector<std::string> cells;
    std::size_t              start = 0;
    while (true)
    {
      auto const pos = line.find(',', start);
      cells.push_back(line.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
      if (pos == std::string::npos)
      {
        break;
      }
      start = pos + 1;
    }
    if (first)
    {
      table.header = std::move(cells);
      first        = false;
    }
    else
    {
      table.rows.push_back(std::move(cells));
    }
  }
  if (first)
  {
    throw ParseError("CSV input is empty");
  }
  return table;
}

namespace {

void append_row(std::string &out, std::vector<std::string> const &cells)
{
  for (std::size_t c = 0; c < cells.size(); ++c)
  {
    if (c > 0)
    {
      out += ',';
    }
    out += cells[c];
  }
  out += '\n';
}

std::string line_context(std::size_t row, std::size_t col)
{
  return "line " + std::to_string(row + 2) + ", field " + std::to_string(col + 1);
}

}  // namespace

std::string variance_to_csv(VarianceMatrix const &v)
{
  std::string              out;
  bool const               labeled = !v.groups.empty();
  std::vector<std::string> header{"subject_id"};
  if (labeled)
  {
    header.emplace_back("group");
  }
  for (double t : v.grid.points())
  {
    header.push_back(format_double(t));
  }
  append_row(out, header);
  for (std::size_t i = 0; i < v.values.rows(); ++i)
  {
    std::vector<std::string> row{v.ids[i]};
    if (labeled)
    {
      row.push_back(v.groups[i]);
    }
    for (double x : v.values.row(i))
    {
      row.push_back(format_double(x));
    }
    append_row(out, row);
  }
  return out;
}

VarianceMatrix variance_from_csv(std::string const &text)
{
  auto const table = parse_csv(text);
  if (table.header.empty() || table.header[0] != "subject_id")
  {
    throw ParseError("variance CSV: first header field must be 'subject_id'");
  }
  bool const        labeled = table.header.size() > 1 && table.header[1] == "group";
  std::size_t const offset  = labeled ? 2 : 1;
  if (table.header.size() <= offset)
  {
    throw ParseError("variance CSV: header declares no time points");
  }
  std::vector<double> points;
  for (std::size_t c = offset; c < table.header.size(); ++c)
  {
    points.push_back(parse_double(table.header[c], "variance CSV header, field " + std::to_string(c + 1)));
  }
  std::size_t const        m = points.size();
  Matrix                   values(table.rows.size(), m);
  std::vector<std::string> ids, groups;
  for (std::size_t i = 0; i < table.rows.size(); ++i)
  {
    auto const &row = table.rows[i];
    if (row.size() != offset + m)
    {
      throw ParseError("variance CSV line " + std::to_string(i + 2) + ": expected " +
                       std::to_string(offset + m) + " fields, found " + std::to_string(row.size()));
    }
    ids.push_back(row[0]);
    if (labeled)
    {
      groups.push_back(row[1]);
    }
    for (std::size_t k = 0; k < m; ++k)
    {
      values(i, k) = parse_double(row[offset + k], "variance CSV " + line_context(i, offset + k));
    }
  }
  return {TimeGrid(std::move(points)), std::move(values), false, std::move(ids), std::move(groups)};
}

void write_variance(VarianceMatrix const &v, std::filesystem::path const &path)
{
  write_file(path, variance_to_csv(v));
}

VarianceMatrix load_variance(std::filesystem::path const &path)
{
  try
  {
    return variance_from_csv(read_file(path));
  }
  catch (IoError const &)
  {
    throw;
  }
  catch (Error const &e)
  {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string labels_to_csv(ObjectTrajectorySample const &sample)
{
  std::string out = "subject_id,group\n";
  for (auto const &s : sample.subjects())
  {
    out += s.id + "," + s.group + "\n";
  }
  return out;
}

std::string nu_hat_to_csv(TimeGrid const &grid, std::vector<double> const &nu_hat)
{
  std::string out = "t,nu_hat\n";
  for (std::size_t k = 0; k < grid.size(); ++k)
  {
    append_row(out, {format_double(grid.points()[k]), format_double(nu_hat[k])});
  }
  return out;
}

std::string covariance_to_csv(CovarianceSurface const &surface)
{
  std::string out;
  for (std::size_t k = 0; k < surface.values.rows(); ++k)
  {
    std::vector<std::string> row;
    for (double x : surface.values.row(k))
    {
      row.push_back(format_double(x));
    }
    append_row(out, row);
  }
  return out;
}

std::string eigen_to_csv(FpcaResult const &fpca)
{
  std::string out = "component,eigenvalue,eigengap,fve\n";
  for (std::size_t j = 0; j < fpca.eigenvalues.size(); ++j)
  {
    append_row(out, {std::to_string(j + 1), format_double(fpca.eigenvalues[j]),
                     format_double(fpca.eigengaps[j]), format_double(fpca.fve[j])});
  }
  return out;
}

std::string eigenfunctions_to_csv(TimeGrid const &grid, Matrix const &eigenfunctions)
{
  std::string              out;
  std::vector<std::string> header{"t"};
  for (std::size_t j = 0; j < eigenfunctions.rows(); ++j)
  {
    header.push_back("phi_" + std::to_string(j + 1));
  }
  append_row(out, header);
  for (std::size_t k = 0; k < grid.size(); ++k)
  {
    std::vector<std::string> row{format_double(grid.points()[k])};
    for (std::size_t j = 0; j < eigenfunctions.rows(); ++j)
    {
      row.push_back(format_double(eigenfunctions(j, k)));
    }
    append_row(out, row);
  }
  return out;
}

std::string scores_to_csv(Matrix const &scores, std::vector<std::string> const &ids,
                          std::vector<std::string> const &groups)
{
  std::string              out;
  bool const               labeled = !groups.empty();
  std::vector<std::string> header{"subject_id"};
  if (labeled)
  {
    header.emplace_back("group");
  }
  for (std::size_t j = 0; j < scores.cols(); ++j)
  {
    header.push_back("B_" + std::to_string(j + 1));
  }
  append_row(out, header);
  for (std::size_t i = 0; i < scores.rows(); ++i)
  {
    std::vector<std::string> row{ids.at(i)};
    if (labeled)
    {
      row.push_back(groups.at(i));
    }
    for (double x : scores.row(i))
    {
      row.push_back(format_double(x));
    }
    append_row(out, row);
  }
  return out;
}

std::string dynamics_to_csv(DynamicsResult const &dynamics)
{
  std::string out = "t,beta,r_squared,drift_var,regime\n";
  for (std::size_t k = 0; k < dynamics.grid.size(); ++k)
  {
    append_row(out, {format_double(dynamics.grid.points()[k]), format_double(dynamics.beta[k]),
                     format_double(dynamics.r_squared[k]), format_double(dynamics.drift_var[k]),
                     std::string(to_string(dynamics.regime[k]))});
  }
  return out;
}

DynamicsResult dynamics_from_csv(std::string const &text)
{
  auto const table = parse_csv(text);
  std::vector<std::string> const expected{"t", "beta", "r_squared", "drift_var", "regime"};
  if (table.header != expected)
  {
    throw ParseError("dynamics CSV: header must be t,beta,r_squared,drift_var,regime");
  }
  std::vector<double> t, beta, r2, drift;
  std::vector<Regime> regime;
  for (std::size_t i = 0; i < table.rows.size(); ++i)
  {
    auto const &row = table.rows[i];
    if (row.size() != 5)
    {
      throw ParseError("dynamics CSV line " + std::to_string(i + 2) + ": expected 5 fields");
    }
    t.push_back(parse_double(row[0], "dynamics CSV " + line_context(i, 0)));
    beta.push_back(parse_double(row[1], "dynamics CSV " + line_context(i, 1)));
    r2.push_back(parse_double(row[2], "dynamics CSV " + line_context(i, 2)));
    drift.push_back(parse_double(row[3], "dynamics CSV " + line_context(i, 3)));
    regime.push_back(parse_regime(row[4]));
  }
  return {TimeGrid(std::move(t)), std::move(beta), std::move(r2), std::move(drift),
          std::move(regime), 0.0};
}

// --- SVG ---------------------------------------------------------------------

namespace {

std::string fixed(double v)
{
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
  return {buf, res.ptr};
}

std::string escape_xml(std::string const &s)
{
  std::string out;
  for (char c : s)
  {
    switch (c)
    {
    case '<':
      out += "&lt;";
      break;
    case '>':
      out += "&gt;";
      break;
    case '&':
      out += "&amp;";
      break;
    case '"':
      out += "&quot;";
      break;
    default:
      out += c;
    }
  }
  return out;
}

}  // namespace

std::string scores_scatter_svg(Matrix const &scores, std::vector<std::string> const &groups)
{
  static constexpr char const *palette[] = {"#d62728", "#1f77b4", "#2ca02c", "#ff7f0e",
                                            "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  constexpr double width = 640.0, height = 480.0;
  constexpr double left = 70.0, right = 130.0, top = 40.0, bottom = 60.0;
  std::size_t const n = scores.rows();

  auto coord = [&](std::size_t i, std::size_t j) {
    return j < scores.cols() ? scores(i, j) : 0.0;
  };
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  for (std::size_t i = 0; i < n; ++i)
  {
    double const x = coord(i, 0), y = coord(i, 1);
    if (i == 0)
    {
      xmin = xmax = x;
      ymin = ymax = y;
    }
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  auto pad = [](double &lo, double &hi) {
    double const span = hi - lo;
    double const p    = span > 0.0 ? 0.05 * span : 1.0;
    lo -= p;
    hi += p;
  };
  pad(xmin, xmax);
  pad(ymin, ymax);
  double const pw = width - left - right;
  double const ph = height - top - bottom;
  auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

  std::vector<std::string> levels = groups;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::map<std::string, std::size_t> color_index;
  for (std::size_t g = 0; g < levels.size(); ++g)
  {
    color_index[levels[g]] = g;
  }

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
         "viewBox=\"0 0 640 480\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n";
  out += "<text x=\"" + fixed(left + pw / 2) +
         "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
         "FPC scores</text>\n";
  out += "<g stroke=\"black\" stroke-width=\"1\">\n";
  out += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(top + ph) + "\" x2=\"" + fixed(left + pw) +
         "\" y2=\"" + fixed(top + ph) + "\"/>\n";
  out += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(top) + "\" x2=\"" + fixed(left) +
         "\" y2=\"" + fixed(top + ph) + "\"/>\n";
  out += "</g>\n";
  auto label = [&](double x, double y, std::string const &text, char const *anchor) {
    out += "<text x=\"" + fixed(x) + "\" y=\"" + fixed(y) + "\" text-anchor=\"" + anchor +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + escape_xml(text) + "</text>\n";
  };
  label(left, top + ph + 16, format_double(xmin).substr(0, 8), "start");
  label(left + pw, top + ph + 16, format_double(xmax).substr(0, 8), "end");
  label(left - 6, top + ph, format_double(ymin).substr(0, 8), "end");
  label(left - 6, top + 10, format_double(ymax).substr(0, 8), "end");
  label(left + pw / 2, height - 18, "first FPC score", "middle");
  out += "<text x=\"18\" y=\"" + fixed(top + ph / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\" "
         "transform=\"rotate(-90 18 " +
         fixed(top + ph / 2) + ")\">second FPC score</text>\n";

  out += "<g stroke=\"none\" fill-opacity=\"0.8\">\n";
  for (std::size_t i = 0; i < n; ++i)
  {
    std::size_t const g = groups.empty() ? 0 : color_index[groups[i]];
    out += "<circle cx=\"" + fixed(sx(coord(i, 0))) + "\" cy=\"" + fixed(sy(coord(i, 1))) +
           "\" r=\"4\" fill=\"" + palette[g % std::size(palette)] + "\"/>\n";
  }
  out += "</g>\n";

  for (std::size_t g = 0; g < levels.size(); ++g)
  {
    double const y = top + 10.0 + 20.0 * static_cast<double>(g);
    out += "<rect x=\"" + fixed(width - right + 20) + "\" y=\"" + fixed(y - 8) +
           "\" width=\"10\" height=\"10\" fill=\"" + palette[g % std::size(palette)] + "\"/>\n";
    label(width - right + 36, y + 1, "group " + levels[g], "start");
  }
  out += "</svg>\n";
  return out;
}

}  // namespace fdyn
