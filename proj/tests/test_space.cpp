int placeholder_test_space;
