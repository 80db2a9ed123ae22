from . import norm_report_schema, oracle_schema, restart_schema, sweep_schema
