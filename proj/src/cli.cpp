#include "txinfer/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "txinfer/emitter.hpp"
#include "txinfer/frontend.hpp"
#include "txinfer/pipeline.hpp"

namespace txinfer {

namespace {

namespace fs = std::filesystem;

struct FileOutcome {
  int status = kExitOk;
  std::string diagnostics;
  std::vector<std::pair<std::string, std::string>> blocks;  // target, text
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CompileError(ErrorKind::Config, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

FileOutcome process(const std::string& path, const RunConfig& config, const ClassTable* catalog) {
  FileOutcome fo;
  try {
    PipelineOptions opts;
    opts.catalog = catalog;
    const auto unit = infer_source(read_file(path), opts);
    for (const auto& target : kEmitTargets) {
      if (!config.emit.count(target)) continue;
      std::string text;
      if (target == "typed-source") text = emit_typed_source(unit);
      else if (target == "signatures") text = emit_signatures(unit);
      else if (target == "descriptors") text = join_lines(emit_descriptors(unit));
      else if (target == "funifaces") text = emit_funifaces(unit);
      else if (target == "constraints") text = dump_constraints(unit);
      else if (target == "unifiers") text = dump_unifiers(unit, config.max_solutions);
      else if (target == "generics") text = dump_generics(unit);
      fo.blocks.emplace_back(target, std::move(text));
    }
  } catch (const CompileError& e) {
    fo.status = is_front_end_error(e.kind()) ? kExitFrontEnd : kExitUntypable;
    fo.diagnostics = e.format(path) + "\n";
    fo.blocks.clear();
  } catch (const std::exception& e) {
    fo.status = kExitUntypable;
    fo.diagnostics = path + ": error[Internal]: " + e.what() + "\n";
    fo.blocks.clear();
  }
  return fo;
}

}  // namespace

std::string output_suffix(const std::string& target) {
  if (target == "typed-source") return ".typed.jtx";
  if (target == "signatures") return ".sigs.txt";
  if (target == "descriptors") return ".desc.txt";
  if (target == "funifaces") return ".funifaces.txt";
  return "";
}

int run_pipeline(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::optional<ClassTable> catalog;
  std::optional<std::string> table_path = config.table_path;
  if (!table_path) {
    if (const char* env = std::getenv("TXINFER_TABLE"); env && *env) table_path = env;
  }
  if (table_path) {
    try {
      catalog = ClassTable::from_json(read_file(*table_path));
    } catch (const CompileError& e) {
      err << e.format(*table_path) << "\n";
      return kExitFrontEnd;
    }
  }

  std::vector<std::future<FileOutcome>> jobs;
  for (const auto& path : config.inputs) {
    jobs.push_back(std::async(std::launch::async, process, path, std::cref(config),
                              catalog ? &*catalog : nullptr));
  }

  std::size_t stdout_blocks = 0;
  for (const auto& t : config.emit) {
    if (!config.out_dir || output_suffix(t).empty()) ++stdout_blocks;
  }
  const bool headers = stdout_blocks * config.inputs.size() > 1;

  int status = kExitOk;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    auto fo = jobs[i].get();
    const auto& path = config.inputs[i];
    status = std::max(status, fo.status);
    err << fo.diagnostics;
    for (const auto& [target, text] : fo.blocks) {
      const auto suffix = output_suffix(target);
      if (config.out_dir && !suffix.empty()) {
        const fs::path dest = fs::path(*config.out_dir) / (fs::path(path).stem().string() + suffix);
        std::error_code ec;
        fs::create_directories(dest.parent_path(), ec);
        std::ofstream file(dest, std::ios::binary);
        if (!file) {
          err << dest.string() << ": error[Config]: cannot write output\n";
          status = std::max(status, kExitFrontEnd);
          continue;
        }
        file << text;
        continue;
      }
      if (headers) out << "==> " << path << " [" << target << "] <==\n";
      out << text;
    }
  }
  return status;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Global type inference for untyped Java-like classes", "tx-infer"};
  RunConfig config;
  std::vector<std::string> emit;
  std::vector<std::string> stages;
  std::string table;
  std::string out_dir;
  std::size_t max_solutions = 0;

  app.add_option("inputs", config.inputs, "Source files (.jtx)")->required();
  app.add_option("--emit", emit, "Outputs: " + [] {
    std::string s;
    for (const auto& t : kEmitTargets) s += (s.empty() ? "" : ", ") + t;
    return s;
  }())->delimiter(',')->check(CLI::IsMember(kEmitTargets));
  app.add_option("--dump-stage", stages, "Print an intermediate stage")
      ->delimiter(',')
      ->check(CLI::IsMember({"constraints", "unifiers", "generics"}));
  app.add_option("--table", table, "Built-in class table (JSON); overrides TXINFER_TABLE");
  app.add_option("-o,--out-dir", out_dir, "Write file outputs here instead of stdout");
  app.add_option("--max-solutions", max_solutions, "Cap on reported unifiers per class")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, r;
    const int code = app.exit(e, o, r);
    out << o.str();
    err << r.str();
    return code == 0 ? kExitOk : kExitFrontEnd;
  }

  config.emit.insert(emit.begin(), emit.end());
  config.emit.insert(stages.begin(), stages.end());
  if (config.emit.empty()) config.emit = {"typed-source", "signatures"};
  if (!table.empty()) config.table_path = table;
  if (!out_dir.empty()) config.out_dir = out_dir;
  if (max_solutions > 0) config.max_solutions = max_solutions;
  return run_pipeline(config, out, err);
}

}  // namespace txinfer
