# Services initialization
