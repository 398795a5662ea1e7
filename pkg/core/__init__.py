# Core module: settings, models, errors and the workflow orchestrator
