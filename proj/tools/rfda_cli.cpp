// SPDX-License-Identifier: Apache-2.0
//
// rfda - random frequency diverse array modelling and processing library
// Copyright (C) 2026 The rfda authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Command line front end: rfda <scenario> [--config FILE] [--seed N] [--trials N]
//                              [--out DIR] [--threads N] [--set key=value ...] [--format csv|json]

#include <cstdio>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rfda/experiments.hpp"
#include "rfda/table_io.hpp"

namespace
{
    int report_error(const std::string &kind, const std::string &message, int code)
    {
        const nlohmann::json record = {{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}};
        std::cerr << record.dump() << std::endl;
        return code;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Random frequency diverse array simulation campaigns"};
    app.set_version_flag("--version", rfda::version_string());

    std::string config_path;
    std::string out_dir;
    std::string format = "csv";
    std::vector<std::string> overrides;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    int threads = 0;

    app.add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
    auto *seed_opt = app.add_option("--seed", seed, "Root seed");
    auto *trials_opt = app.add_option("--trials", trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
    app.add_option("--out", out_dir, "Output directory (default rfda_out/<scenario>)");
    app.add_option("--threads", threads, "Worker threads, 0 = automatic")->check(CLI::NonNegativeNumber);
    app.add_option("--set", overrides, "Configuration override key=value (dotted keys)");
    app.add_option("--format", format, "Table format")->check(CLI::IsMember({"csv", "json"}));

    const char *names[] = {"beampattern", "moments", "ks", "detect_example", "detect_sweep", "crb_mse", "coherence"};
    for (const char *name : names)
        app.add_subcommand(name, std::string("Run the ") + name + " scenario")->fallthrough();
    app.require_subcommand(1);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForVersion &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        return report_error("usage", e.what(), 2);
    }

    const std::string scenario = app.get_subcommands().front()->get_name();
    try
    {
        nlohmann::json j = nlohmann::json::object();
        if (!config_path.empty())
        {
            try
            {
                j = nlohmann::json::parse(rfda::read_text_file(config_path));
            }
            catch (const nlohmann::json::parse_error &e)
            {
                throw std::invalid_argument("config file " + config_path + ": " + e.what());
            }
        }
        j["scenario"] = scenario;
        if (*seed_opt)
            j["seed"] = seed;
        if (*trials_opt)
            j["trials"] = trials;
        for (const std::string &o : overrides)
            rfda::apply_override(j, o);

        const rfda::ExperimentConfig cfg = rfda::config_from_json(j);
        rfda::RunOptions options;
        options.threads = threads;
        const rfda::CampaignResult result = rfda::run(cfg, options);
        const std::string dir = out_dir.empty() ? "rfda_out/" + scenario : out_dir;
        const auto paths =
            rfda::emit(result, dir, format == "json" ? rfda::TableFormat::json : rfda::TableFormat::csv);
        for (const auto &p : paths)
            std::cout << p.string() << '\n';
        std::fprintf(stderr, "%s: %.3f s\n", scenario.c_str(), result.wall_time_s);
    }
    catch (const std::invalid_argument &e)
    {
        return report_error("config", e.what(), 2);
    }
    catch (const std::runtime_error &e)
    {
        return report_error("io", e.what(), 3);
    }
    catch (const std::exception &e)
    {
        return report_error("internal", e.what(), 1);
    }
    return 0;
}
