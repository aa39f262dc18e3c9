#include "mathkg/cli.hpp"

#include <filesystem>
#include <ostream>

#include "CLI11.hpp"
#include "mathkg/dataset.hpp"
#include "mathkg/errors.hpp"
#include "mathkg/ingest.hpp"
#include "mathkg/query.hpp"
#include "mathkg/recommender.hpp"
#include "mathkg/service.hpp"
#include "mathkg/turtle.hpp"
#include "mathkg/validator.hpp"

namespace mathkg {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string data;
  std::string format;
  std::string query_file;
  std::string query_text;
  bool serial = false;
  std::string problem;
  std::string task;
  std::string formulation;
  std::vector<std::string> add;
  std::vector<std::string> remove;
  std::vector<std::string> template_files;
  bool strict = false;
  bool dry_run = false;
  std::string out_file;
  std::string out_dir;
  std::string config;
};

Iri iri_arg(const std::string& text, const Graph& g) {
  try {
    return parse_iri_argument(text, g.prefixes());
  } catch (const std::exception& e) {
    throw UsageError("invalid IRI '" + text + "': " + e.what());
  }
}

// "mmdb:isStiff=true" -> (mmdb:isStiff, true)
PropertyPair override_arg(const std::string& text, const Graph& g) {
  auto eq = text.find('=');
  if (eq == std::string::npos) throw UsageError("override must look like predicate=value: " + text);
  Iri predicate = iri_arg(text.substr(0, eq), g);
  std::string value = text.substr(eq + 1);
  if (value == "true" || value == "false") return {predicate, Term(Literal::boolean(value == "true"))};
  if (valid_lexical(Datatype::Integer, value)) return {predicate, Term(Literal(value, Datatype::Integer))};
  if (valid_lexical(Datatype::Decimal, value)) return {predicate, Term(Literal(value, Datatype::Decimal))};
  return {predicate, Term(Literal::string(value))};
}

Graph load(const Options& o) {
  if (o.data.empty()) throw UsageError("no data path: pass --data or set MATHKG_DATA");
  return load_data(o.data);
}

int cmd_load(const Options& o, std::ostream& out) {
  Graph g = load(o);
  out << g.size() << " triples\n";
  for (auto c : kAllClasses) out << class_name(c) << " " << g.instances_of(c).size() << "\n";
  return 0;
}

int cmd_validate(const Options& o, std::ostream& out) {
  Graph g = load(o);
  auto report = validate(g, o.serial ? Execution::Serial : Execution::Parallel);
  out << (o.format == "json" ? report_to_json(report, g.prefixes()) : report_to_text(report, g.prefixes()));
  return report.errors() == 0 ? 0 : 1;
}

int cmd_query(const Options& o, std::ostream& out) {
  auto format = query::result_format_from_name(o.format);
  if (!format) throw UsageError("unknown format '" + o.format + "'");
  if (o.query_file.empty() == o.query_text.empty()) throw UsageError("pass exactly one of --file and --query");
  std::string text = o.query_file.empty() ? o.query_text : read_text(o.query_file);
  auto q = query::parse_query(text);
  Graph g = load(o);
  auto table = query::evaluate(g, q, {.execution = o.serial ? Execution::Serial : Execution::Parallel});
  PrefixMap prefixes = g.prefixes();
  for (const auto& [k, v] : q.prefixes) prefixes[k] = v;
  out << query::format_results(table, *format, prefixes);
  return 0;
}

int cmd_recommend(const Options& o, std::ostream& out) {
  Graph g = load(o);
  RecommendResult result;
  Execution exec = o.serial ? Execution::Serial : Execution::Parallel;
  if (!o.problem.empty()) {
    if (!o.task.empty() || !o.formulation.empty()) throw UsageError("--problem excludes --task/--formulation");
    result = recommend(g, iri_arg(o.problem, g), exec);
  } else if (!o.task.empty() && !o.formulation.empty()) {
    PropertyOverrides overrides;
    for (const auto& a : o.add) overrides.add.insert(override_arg(a, g));
    for (const auto& r : o.remove) overrides.remove.insert(override_arg(r, g));
    result.recommendations.push_back(
        recommend_for(g, iri_arg(o.task, g), iri_arg(o.formulation, g), overrides, exec));
  } else {
    throw UsageError("pass --problem, or --task and --formulation");
  }
  out << (o.format == "json" ? recommendations_to_json(result, g.prefixes())
                             : recommendations_to_text(result, g.prefixes()));
  return 0;
}

void persist(const Graph& g, const std::string& data) {
  if (fs::is_directory(data)) {
    write_dataset(g, data);
  } else {
    write_text(data, turtle::serialize(g));
  }
}

int cmd_ingest(const Options& o, std::ostream& out, std::ostream& err) {
  Graph g = o.data.empty() ? Graph() : load(o);
  std::vector<TemplateDraft> drafts;
  for (const auto& file : o.template_files) {
    drafts.push_back(parse_template(read_text(file), fs::path(file).filename().string()));
  }
  auto draft = combine_drafts(drafts);
  for (const auto& w : draft.warnings) err << "warning: " << w << "\n";
  auto triples = draft_to_triples(draft, &g);
  auto report = merge(g, triples, o.strict ? MergeMode::Strict : MergeMode::Additive);
  size_t inverses = repair_inverses(g);
  if (!o.dry_run && !o.data.empty()) persist(g, o.data);
  std::string json = merge_report_to_json(report);
  json.erase(json.find_last_not_of(" \n}") + 1);
  out << json << ",\n  \"inversesAdded\": " << inverses << "\n}\n";
  return report.conflicts.empty() ? 0 : 1;
}

int cmd_export(const Options& o, std::ostream& out) {
  Graph g = load(o);
  if (o.out_file.empty() == o.out_dir.empty()) throw UsageError("pass exactly one of --out and --out-dir");
  if (!o.out_file.empty()) {
    write_text(o.out_file, turtle::serialize(g));
    out << "wrote " << g.size() << " triples to " << o.out_file << "\n";
  } else {
    auto manifest = write_dataset(g, o.out_dir);
    for (const auto& f : manifest.files) out << "wrote " << f.triples << " triples to " << f.path << "\n";
  }
  return 0;
}

int cmd_serve(const Options& o, std::ostream& out) {
  ServiceConfig config;
  if (!o.config.empty()) {
    config = ServiceConfig::from_json(read_text(o.config));
  } else {
    config.data_path = o.data;
  }
  if (config.data_path.empty()) throw UsageError("no data path in config or --data");
  return serve(config, out);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Knowledge graph of mathematical models and algorithms"};
  app.require_subcommand(1);
  Options o;

  auto data_opt = [&](CLI::App* cmd) {
    cmd->add_option("--data", o.data, "Directory of .ttl files or a single .ttl file")->envname("MATHKG_DATA");
  };
  auto serial_flag = [&](CLI::App* cmd) {
    cmd->add_flag("--serial", o.serial, "Use the serial reference implementation");
  };

  auto* load_cmd = app.add_subcommand("load", "Load data and print class counts");
  data_opt(load_cmd);

  auto* validate_cmd = app.add_subcommand("validate", "Check the graph against the schema");
  data_opt(validate_cmd);
  serial_flag(validate_cmd);
  validate_cmd->add_option("--format", o.format, "text|json")->check(CLI::IsMember({"text", "json"}));

  auto* query_cmd = app.add_subcommand("query", "Run a SELECT query");
  data_opt(query_cmd);
  serial_flag(query_cmd);
  query_cmd->add_option("--file", o.query_file, "Query file")->check(CLI::ExistingFile);
  query_cmd->add_option("--query", o.query_text, "Query text");
  query_cmd->add_option("--format", o.format, "csv|text|json")->check(CLI::IsMember({"csv", "text", "json"}));

  auto* recommend_cmd = app.add_subcommand("recommend", "Classify candidate algorithms");
  data_opt(recommend_cmd);
  serial_flag(recommend_cmd);
  recommend_cmd->add_option("--problem", o.problem, "Research problem IRI");
  recommend_cmd->add_option("--task", o.task, "Computational task IRI");
  recommend_cmd->add_option("--formulation", o.formulation, "Formulation IRI");
  recommend_cmd->add_option("--add", o.add, "Property override predicate=value to add");
  recommend_cmd->add_option("--remove", o.remove, "Property override predicate=value to remove");
  recommend_cmd->add_option("--format", o.format, "text|json")->check(CLI::IsMember({"text", "json"}));

  auto* ingest_cmd = app.add_subcommand("ingest", "Merge a documentation template into the data");
  data_opt(ingest_cmd);
  ingest_cmd->add_option("--template", o.template_files, "Template .model.md file, repeatable")
      ->required()
      ->check(CLI::ExistingFile);
  ingest_cmd->add_flag("--strict", o.strict, "Skip subjects whose label, formula or ids conflict");
  ingest_cmd->add_flag("--dry-run", o.dry_run, "Report without writing the data files");

  auto* export_cmd = app.add_subcommand("export", "Write the graph as Turtle");
  data_opt(export_cmd);
  export_cmd->add_option("--out", o.out_file, "Single output .ttl file");
  export_cmd->add_option("--out-dir", o.out_dir, "Directory for mathmoddb.ttl, mathalgodb.ttl, manifest.json");

  auto* serve_cmd = app.add_subcommand("serve", "Start the HTTP service");
  data_opt(serve_cmd);
  serve_cmd->add_option("--config", o.config, "Service config JSON")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (o.format.empty()) o.format = "text";
  try {
    if (*load_cmd) return cmd_load(o, out);
    if (*validate_cmd) return cmd_validate(o, out);
    if (*query_cmd) return cmd_query(o, out);
    if (*recommend_cmd) return cmd_recommend(o, out);
    if (*ingest_cmd) return cmd_ingest(o, out, err);
    if (*export_cmd) return cmd_export(o, out);
    if (*serve_cmd) return cmd_serve(o, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const IngestError& e) {
    err << "template error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace mathkg
