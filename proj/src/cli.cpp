//
// bcfuse - Copyright 2026 The bcfuse Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "bcfuse/cli.h"

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bcfuse/error.h"
#include "bcfuse/ingest.h"
#include "bcfuse/isocheck.h"
#include "bcfuse/pipeline.h"
#include "bcfuse/service.h"

namespace bcfuse {

namespace {

struct InputFlags {
  std::vector<std::string> components;
  std::string domain;
  std::string lexicon;
  std::string history;
  std::size_t threshold = 3;
  AlignmentParams params;

  void add_to(CLI::App &cmd, bool require_components) {
    auto *opt = cmd.add_option("--component", components,
                               "component model (.bcm); repeatable");
    if (require_components)
      opt->required();
    cmd.add_option("--domain", domain, "domain ontology (.onto)");
    cmd.add_option("--lexicon", lexicon, "synonym lexicon (.syn)");
    cmd.add_option("--anchor-threshold", params.anchor_threshold,
                   "minimum anchoring score")
        ->check(CLI::Range(0.0, 1.0));
    cmd.add_option("--homonym-jaccard", params.homonym_attr_jaccard_max,
                   "attribute Jaccard below which equal labels are homonyms")
        ->check(CLI::Range(0.0, 1.0));
    cmd.add_option("--lexical-weight", params.lexical_weight,
                   "lexical share of the reported similarity")
        ->check(CLI::Range(0.0, 1.0));
  }

  void add_history_to(CLI::App &cmd) {
    cmd.add_option("--history", history, "action history file");
    cmd.add_option("--threshold", threshold,
                   "choices needed before history overrides the default")
        ->check(CLI::PositiveNumber);
  }

  IntegrationInputs load() const {
    std::vector<NamedText> texts;
    for (const std::string &path: components)
      texts.push_back({ path, read_file(path) });
    std::optional<NamedText> d, l;
    if (!domain.empty())
      d = NamedText { domain, read_file(domain) };
    if (!lexicon.empty())
      l = NamedText { lexicon, read_file(lexicon) };
    return load_inputs(texts, d, l, params);
  }
};

void write_output(const std::string &path, const std::string &content,
                  std::ostream &out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw Error("IO_ERROR", "cannot write '" + path + "'");
  f << content;
  if (!f)
    throw Error("IO_ERROR", "write to '" + path + "' failed");
}

// "Comp:A,B" -> (component, members)
std::pair<std::string, std::vector<std::string>>
parse_subset(const std::string &arg) {
  auto colon = arg.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == arg.size())
    throw ValidationError("BAD_SUBSET",
                          "subset '" + arg + "' is not Component:A,B,...");
  std::vector<std::string> members;
  std::stringstream ss(arg.substr(colon + 1));
  std::string m;
  while (std::getline(ss, m, ','))
    if (!m.empty())
      members.push_back(m);
  return { arg.substr(0, colon), members };
}

std::string describe(const SubComponent &s) {
  std::string out = s.component() + "{";
  for (std::size_t i = 0; i < s.members().size(); ++i)
    out += (i ? "," : "") + s.members()[i];
  return out + "}";
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out,
        std::ostream &err) {
  CLI::App app { "bcfuse: semantic integration of business components" };
  app.require_subcommand(1);

  InputFlags integrate_flags;
  std::string out_path, alignment_out, report_path, decisions_path;
  bool record = false;
  auto *integrate_cmd =
      app.add_subcommand("integrate", "merge components into one (batch)");
  integrate_flags.add_to(*integrate_cmd, true);
  integrate_flags.add_history_to(*integrate_cmd);
  integrate_cmd->add_option("--out", out_path, "merged .bcm (default stdout)");
  integrate_cmd->add_option("--alignment-out", alignment_out,
                            "write the alignment export (JSON)");
  integrate_cmd->add_option("--report", report_path,
                            "write one line per applied decision");
  integrate_cmd->add_option("--decisions", decisions_path,
                            "explicit '<index>\\t<action>' decisions");
  integrate_cmd->add_flag("--record", record,
                          "append the applied decisions to --history");

  InputFlags align_flags;
  std::string align_out;
  auto *align_cmd =
      app.add_subcommand("align", "stop after the correspondence ontology");
  align_flags.add_to(*align_cmd, true);
  align_cmd->add_option("--out", align_out, "alignment JSON (default stdout)");

  std::vector<std::string> precheck_components, subsets;
  bool brute = false;
  auto *precheck_cmd = app.add_subcommand(
      "precheck", "non-isomorphism pre-filter over sub-component pairs");
  precheck_cmd->add_option("--component", precheck_components, "component model")
      ->required();
  precheck_cmd->add_option("--subset", subsets,
                           "sub-component as Component:A,B; repeatable");
  precheck_cmd->add_flag("--brute", brute,
                         "also run the exhaustive isomorphism oracle");

  InputFlags serve_flags;
  int port = kDefaultPort;
  std::string host = "127.0.0.1";
  auto *serve_cmd = app.add_subcommand("serve", "run the review session API");
  serve_flags.add_to(*serve_cmd, false);
  serve_flags.add_history_to(*serve_cmd);
  serve_cmd->add_option("--port", port, "listen port")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", host, "listen address");

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i)
      args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n\n";
    const CLI::App *sub = nullptr;
    for (const CLI::App *s: app.get_subcommands())
      sub = s;
    err << (sub ? sub->help() : app.help());
    return kExitUsage;
  }

  try {
    if (integrate_cmd->parsed()) {
      auto history = std::make_shared<HistoryStore>(integrate_flags.history,
                                                    integrate_flags.threshold);
      PreparedIntegration prepared =
          prepare(integrate_flags.load(), history->snapshot());
      std::map<std::size_t, ResolutionAction> decisions;
      if (!decisions_path.empty())
        decisions = parse_decisions(read_file(decisions_path));

      IntegrationArtifact artifact = run_batch(prepared, decisions);
      if (record) {
        std::string now = utc_timestamp();
        for (const AppliedDecision &d: artifact.report.decisions)
          history->append({ now, d.relation, d.context_key, d.action.kind });
      }
      if (!alignment_out.empty())
        write_output(alignment_out, export_alignment(prepared.alignment), out);
      if (!report_path.empty())
        write_output(report_path, artifact.report.to_text(), out);
      write_output(out_path, artifact.bcm, out);
      return kExitOk;
    }

    if (align_cmd->parsed()) {
      PreparedIntegration prepared = prepare(align_flags.load(), ActionHistory());
      write_output(align_out, export_alignment(prepared.alignment), out);
      return kExitOk;
    }

    if (precheck_cmd->parsed()) {
      std::map<std::string, ComponentModel> models;
      std::vector<std::string> order;
      for (const std::string &path: precheck_components) {
        ComponentModel m;
        try {
          m = load_bcm(read_file(path));
        } catch (const ParseError &e) {
          throw e.with_source(path);
        }
        order.push_back(m.name);
        models.emplace(m.name, std::move(m));
      }

      std::vector<SubComponent> parts;
      if (subsets.empty()) {
        for (const std::string &name: order)
          parts.push_back(SubComponent::whole(models.at(name)));
      } else {
        for (const std::string &arg: subsets) {
          auto [component, members] = parse_subset(arg);
          auto it = models.find(component);
          if (it == models.end())
            throw NotFoundError("UNKNOWN_COMPONENT",
                                "no component '" + component + "' loaded");
          parts.emplace_back(it->second, members);
        }
      }
      if (parts.size() < 2)
        throw ValidationError("BAD_SUBSET",
                              "precheck needs at least two sub-components");

      for (std::size_t i = 0; i < parts.size(); ++i) {
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
          out << describe(parts[i]) << '\t' << describe(parts[j]) << '\t'
              << format_verdict(non_iso_check(parts[i], parts[j]));
          if (brute)
            out << '\t'
                << (brute_force_isomorphic(parts[i], parts[j])
                        ? "isomorphic"
                        : "notIsomorphic");
          out << '\n';
        }
      }
      return kExitOk;
    }

    if (serve_cmd->parsed()) {
      auto history = std::make_shared<HistoryStore>(serve_flags.history,
                                                    serve_flags.threshold);
      SessionManager sessions(history);
      if (!serve_flags.components.empty()) {
        IntegrationInputs in = serve_flags.load();
        SessionInputs si;
        for (std::size_t i = 0; i < serve_flags.components.size(); ++i)
          si.components.push_back(
              { serve_flags.components[i],
                read_file(serve_flags.components[i]) });
        if (!serve_flags.domain.empty())
          si.domain = NamedText { serve_flags.domain,
                                  read_file(serve_flags.domain) };
        if (!serve_flags.lexicon.empty())
          si.lexicon = NamedText { serve_flags.lexicon,
                                   read_file(serve_flags.lexicon) };
        si.params = in.params;
        out << "session " << sessions.create(si).id << '\n';
      }
      out << "listening on http://" << host << ':' << port << '\n';
      out.flush();
      if (!serve(sessions, host, port)) {
        err << "error: cannot listen on " << host << ':' << port << '\n';
        return kExitError;
      }
      return kExitOk;
    }
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitUsage;
}

}  // namespace bcfuse
