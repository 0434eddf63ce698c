log_info_path = "featpca_out/logs/log_info.csv"
log_errors_path = "featpca_out/logs/log_errors.log"
log_trials_path = "featpca_out/logs/log_trials.csv"

output_folder = "featpca_out"
log_to_console = True
