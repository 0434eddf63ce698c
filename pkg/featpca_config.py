log_info_path = "tests/out/logs/log_info.csv"
log_errors_path = "tests/out/logs/log_errors.log"
log_trials_path = "tests/out/logs/log_trials.csv"

output_folder = "tests/out"
log_to_console = False
