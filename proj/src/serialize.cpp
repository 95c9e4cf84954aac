namespace fieldmodes {}
