#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace igdep::cli;

  CLI::App app{"Interaction grammar parser with dependency extraction"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string grammar, sentence, corpus, format = "tsv";
  long long timeout_ms = cfg.limits.timeout.count();

  auto* parse = app.add_subcommand("parse", "Parse one sentence");
  parse->add_option("-g,--grammar", grammar, "Grammar file (defaults to the bundled toy grammar)");
  parse->add_option("-s,--sentence", sentence, "Whitespace-tokenized sentence")->required();
  parse->add_option("-f,--format", format, "Output format")
      ->check(CLI::IsMember({"tsv", "json", "dot", "bracketed"}));
  parse->add_flag("--all-models", cfg.all_models, "Emit every model instead of the first");
  parse->add_flag("--label-funct", cfg.label_funct, "Label edges with the site's funct feature");
  parse->add_option("--max-merges", cfg.limits.max_merges, "Node-merge budget");
  parse->add_option("--timeout-ms", timeout_ms, "Search timeout in milliseconds");

  auto* check = app.add_subcommand("check", "Validate a grammar and its connectivity condition");
  std::string check_path;
  check->add_option("-g,--grammar,grammar", check_path, "Grammar file")->required();

  auto* run_corpus = app.add_subcommand("corpus", "Run an accept/reject regression corpus");
  run_corpus->add_option("-c,--corpus", corpus, "Corpus file")->required();
  run_corpus->add_option("-g,--grammar", grammar, "Grammar file (defaults to the bundled toy grammar)");
  run_corpus->add_flag("--label-funct", cfg.label_funct, "Compare funct labels");
  run_corpus->add_option("--max-merges", cfg.limits.max_merges, "Node-merge budget per sentence");
  run_corpus->add_option("--timeout-ms", timeout_ms, "Search timeout per sentence");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  if (!grammar.empty())
    cfg.grammar_path = grammar;
  cfg.limits.timeout = std::chrono::milliseconds(timeout_ms);

  if (*check)
    return cmd_check(check_path, std::cout, std::cerr);
  if (*parse) {
    cfg.sentence = sentence;
    cfg.format = format_from_token(format);
    return cmd_parse(cfg, std::cout, std::cerr);
  }
  cfg.corpus_path = corpus;
  return cmd_corpus(cfg, std::cout, std::cerr);
}
