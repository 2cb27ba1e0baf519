#include "nilcalc/commands.hpp"
#include "nilcalc/errors.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace nilcalc;

int main(int argc, char **argv)
{
	CLI::App app{"nilcalc: graded nilpotent Lie algebras, orbits and H-ellipticity"};
	app.set_version_flag("--version", std::string(tool_version));

	std::string command;
	RunOptions opt;
	std::string json_out, doc_out;
	std::string command_list;
	for (auto &c : command_names())
		command_list += (command_list.empty() ? "" : ", ") + c;

	app.add_option("command", command, "one of: " + command_list)
	    ->required()
	    ->check(CLI::IsMember(command_names()));
	app.add_option("--algebra", opt.algebra, "algebra document (.json or .toml)");
	app.add_option("--family", opt.family, "generated family name");
	app.add_option("--param", opt.param, "family parameter");
	app.add_option("--xi", opt.xi, "covector \"a,b,...\" with p/q entries");
	app.add_option("--gamma", opt.gamma, "matrix rows split by ';', entries by ','");
	app.add_option("--resolution", opt.resolution, "sample count");
	app.add_option("--truncation", opt.truncation, "Hermite or layer truncation");
	app.add_option("--tolerance", opt.tolerance, "relative tolerance");
	app.add_option("--seed", opt.seed, "sampling seed");
	app.add_option("--corpus", opt.corpus, "corpus directory for corpus-regression");
	app.add_option("--json", json_out, "write the report to this file");
	app.add_option("--out", doc_out, "generate: write the bare document to this file");

	try
	{
		app.parse(argc, argv);
	}
	catch (const CLI::ParseError &e)
	{
		int code = app.exit(e);
		return code == 0 ? 0 : exit_code_for(ErrorKind::usage);
	}

	opt.threads = worker_count();
	CommandOutcome out = run_command(command, opt);
	std::string text = out.report.dump(2) + "\n";

	if (out.exit_code != 0 && !out.report["status"]["error"].is_null())
		std::cerr << "nilcalc: " << out.report["status"]["error"]["kind"].get<std::string>()
		          << ": " << out.report["status"]["error"]["message"].get<std::string>()
		          << "\n";

	if (!doc_out.empty() && command == "generate" && out.exit_code == 0)
	{
		std::ofstream f(doc_out, std::ios::binary);
		if (!f)
		{
			std::cerr << "nilcalc: cannot write " << doc_out << "\n";
			return exit_code_for(ErrorKind::usage);
		}
		f << out.report["results"]["document"].dump(2) << "\n";
	}

	if (json_out.empty())
		std::cout << text;
	else
	{
		std::ofstream f(json_out, std::ios::binary);
		if (!f)
		{
			std::cerr << "nilcalc: cannot write " << json_out << "\n";
			return exit_code_for(ErrorKind::usage);
		}
		f << text;
	}
	return out.exit_code;
}
