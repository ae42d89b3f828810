int placeholder_test_cover;
